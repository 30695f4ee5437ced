#include "dalg/cli.hpp"

#include <CLI11.hpp>
#include <cctype>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "dalg/engine_multi.hpp"
#include "dalg/engine_uni.hpp"
#include "dalg/errors.hpp"
#include "dalg/jsonio.hpp"
#include "dalg/parser.hpp"
#include "dalg/printer.hpp"
#include "dalg/series.hpp"

namespace dalg {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<InputAde> analyze_all(const ParsedSystem& sys) {
    std::vector<InputAde> ades;
    for (const ParsedEquation& eq : sys.equations)
        ades.push_back(analyze_input(eq.poly, eq.cleared_denominator));
    return ades;
}

LhoMode parse_lho(const std::string& s) {
    if (s == "auto") return LhoMode::Auto;
    if (s == "true") return LhoMode::ForceLho;
    if (s == "false") return LhoMode::ForceNonLho;
    throw CLI::ValidationError("--lho expects auto|true|false");
}

ElimStrategy parse_ordering(const std::string& s) {
    if (s == "lex") return ElimStrategy::Lex;
    if (s == "lexdeg") return ElimStrategy::LexDeg;
    throw CLI::ValidationError("--ordering expects lex|lexdeg");
}

// --- tiny series-expression evaluator for `verify` ------------------------

class SeriesEval {
  public:
    SeriesEval(const std::string& text, const std::vector<std::string>& indep,
               const std::map<std::string, Rational>& params, int trunc)
        : s_(text), indep_(indep), params_(params), trunc_(trunc) {}

    TruncSeries run() {
        TruncSeries r = expr();
        skip_ws();
        if (pos_ != s_.size()) throw UsageError("trailing input in series expression: " + s_.substr(pos_));
        return r;
    }

  private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    TruncSeries expr() {
        TruncSeries acc = term();
        while (true) {
            if (eat('+')) acc = acc + term();
            else if (eat('-')) acc = acc - term();
            else return acc;
        }
    }

    TruncSeries term() {
        TruncSeries acc = factor();
        while (true) {
            if (eat('*')) acc = acc * factor();
            else if (eat('/')) acc = acc * factor().reciprocal();
            else return acc;
        }
    }

    TruncSeries factor() {
        TruncSeries base = atom();
        if (eat('^')) {
            skip_ws();
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) throw UsageError("expected integer exponent in series expression");
            return base.pow(static_cast<uint32_t>(std::stoul(s_.substr(start, pos_ - start))));
        }
        return base;
    }

    TruncSeries atom() {
        skip_ws();
        if (pos_ >= s_.size()) throw UsageError("unexpected end of series expression");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            TruncSeries r = expr();
            if (!eat(')')) throw UsageError("missing ')' in series expression");
            return r;
        }
        if (c == '-') {
            ++pos_;
            return factor().scaled(Rational(-1));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/'))
                ++pos_;
            return TruncSeries::constant(static_cast<int>(indep_.size()), trunc_,
                                         Rational::parse(s_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '(') {
                BuiltinKind kind;
                if (name == "exp") kind = BuiltinKind::Exp;
                else if (name == "sin") kind = BuiltinKind::Sin;
                else if (name == "cos") kind = BuiltinKind::Cos;
                else throw UsageError("unknown series function: " + name);
                ++pos_;
                TruncSeries arg = expr();
                if (!eat(')')) throw UsageError("missing ')' after " + name);
                return series_compose(kind, arg);
            }
            for (size_t i = 0; i < indep_.size(); ++i)
                if (indep_[i] == name)
                    return TruncSeries::variable(static_cast<int>(indep_.size()), trunc_,
                                                 static_cast<int>(i));
            auto pv = params_.find(name);
            if (pv != params_.end())
                return TruncSeries::constant(static_cast<int>(indep_.size()), trunc_, pv->second);
            throw UsageError("unknown symbol in series expression: " + name +
                             " (give parameters with --param name=value)");
        }
        throw UsageError(std::string("unexpected character in series expression: ") + c);
    }

    const std::string& s_;
    size_t pos_ = 0;
    const std::vector<std::string>& indep_;
    const std::map<std::string, Rational>& params_;
    int trunc_;
};

struct CommonFlags {
    std::string input;
    bool json = false;
    bool latex = false;
    bool verify = false;
    uint64_t max_pairs = 0;
    double time_limit_s = 0.0;

    void attach(CLI::App* cmd, bool with_styles = true) {
        cmd->add_option("-i,--input", input, "input system file")->required();
        if (with_styles) {
            cmd->add_flag("--json", json, "machine-readable output");
            cmd->add_flag("--latex", latex, "latex rendering of the result");
            cmd->add_flag("--verify", verify, "post-hoc basis and membership checks");
        }
        cmd->add_option("--max-pairs", max_pairs, "S-pair budget for basis computations");
        cmd->add_option("--time-limit-s", time_limit_s, "wall-clock budget in seconds");
    }

    void fill(Budget& b) const {
        if (max_pairs) b.max_pairs = max_pairs;
        if (time_limit_s > 0) b.time_limit_s = time_limit_s;
    }
};

int emit_result(const AdeResult& res, const CommonFlags& flags, std::ostream& out) {
    if (flags.json) out << emit_json(res);
    else out << print_ade(res, flags.latex ? PrintStyle::Latex : PrintStyle::Ascii) << "\n";
    return 0;
}

std::map<std::string, Rational> parse_params(const std::vector<std::string>& kvs) {
    std::map<std::string, Rational> out;
    for (const std::string& kv : kvs) {
        size_t eq = kv.find('=');
        if (eq == std::string::npos) throw UsageError("--param expects name=value: " + kv);
        out[kv.substr(0, eq)] = Rational::parse(kv.substr(eq + 1));
    }
    return out;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"dalg: algebraic differential equations for rational expressions of D-algebraic functions"};
    app.require_subcommand(1);

    CommonFlags uni_flags, unary_flags, multi_flags, verify_flags;
    std::string uni_lho = "auto", uni_ordering = "lex", multi_ordering = "lex";
    std::string unary_lho = "auto", unary_ordering = "lex";
    bool uni_sepzeros = false, uni_difffirst = false;
    bool unary_sepzeros = false, unary_difffirst = false;
    std::string maxord_csv;
    std::string result_path, series_spec;
    int trunc = 0;
    std::vector<std::string> param_kvs;
    int rank_l = 0;
    std::string rank_tuple;
    int64_t rank_index = -1;

    CLI::App* uni = app.add_subcommand("uni", "arithmetic of univariate D-algebraic functions");
    uni_flags.attach(uni);
    uni->add_option("--lho", uni_lho, "auto|true|false");
    uni->add_option("--ordering", uni_ordering, "lex|lexdeg");
    uni->add_flag("--separants-zeros", uni_sepzeros, "saturate by the denominators only");
    uni->add_flag("--diff-first", uni_difffirst, "replace non-l.h.o. inputs by their derivatives");

    CLI::App* unary = app.add_subcommand("unary", "single-input transformation");
    unary_flags.attach(unary);
    unary->add_option("--lho", unary_lho, "auto|true|false");
    unary->add_option("--ordering", unary_ordering, "lex|lexdeg");
    unary->add_flag("--separants-zeros", unary_sepzeros, "saturate by the denominators only");
    unary->add_flag("--diff-first", unary_difffirst, "replace non-l.h.o. inputs by their derivatives");

    CLI::App* multi = app.add_subcommand("multi", "arithmetic of multivariate D-algebraic functions");
    multi_flags.attach(multi);
    multi->add_option("--maxord", maxord_csv, "componentwise order bound n1,n2,...");
    multi->add_option("--ordering", multi_ordering, "lex|lexdeg");

    CLI::App* verify = app.add_subcommand("verify", "certify a result against truncated series");
    verify_flags.attach(verify, /*with_styles=*/false);
    verify->add_option("--result", result_path, "result file (JSON from --json)")->required();
    verify->add_option("--series", series_spec, "target series, e.g. \"z=cos(x)+exp(x)\"")->required();
    verify->add_option("--trunc", trunc, "truncation degree")->required();
    verify->add_option("--param", param_kvs, "parameter specialization name=value");

    CLI::App* rank = app.add_subcommand("rank", "theta ranking of derivative multi-indices");
    rank->add_option("--l", rank_l, "number of independent variables")->required();
    rank->add_option("--tuple", rank_tuple, "multi-index a,b,...");
    rank->add_option("--index", rank_index, "rank to invert");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n" << app.help();
        return 64;
    }

    try {
        if (uni->parsed() || unary->parsed()) {
            const bool is_unary = unary->parsed();
            CommonFlags& flags = is_unary ? unary_flags : uni_flags;
            ParsedSystem sys = parse_system(slurp(flags.input));
            std::vector<InputAde> ades = analyze_all(sys);
            if (is_unary && ades.size() != 1)
                throw UsageError("unary expects exactly one input ADE, got " +
                                 std::to_string(ades.size()));
            UniOptions opts;
            opts.lho_mode = parse_lho(is_unary ? unary_lho : uni_lho);
            opts.ordering = parse_ordering(is_unary ? unary_ordering : uni_ordering);
            opts.separants_zeros = is_unary ? unary_sepzeros : uni_sepzeros;
            opts.diff_first = is_unary ? unary_difffirst : uni_difffirst;
            opts.verify = flags.verify;
            flags.fill(opts.budget);
            AdeResult res = arithmetic_uni(std::move(ades), sys.target, sys.target_name, opts);
            return emit_result(res, flags, out);
        }

        if (multi->parsed()) {
            ParsedSystem sys = parse_system(slurp(multi_flags.input));
            std::vector<MultiInput> inputs;
            for (const ParsedEquation& eq : sys.equations)
                inputs.push_back({eq.poly, eq.cleared_denominator});
            MultiOptions opts;
            opts.ordering = parse_ordering(multi_ordering);
            opts.verify = multi_flags.verify;
            multi_flags.fill(opts.budget);
            if (!maxord_csv.empty()) {
                std::vector<uint32_t> mo;
                std::stringstream ss(maxord_csv);
                std::string piece;
                while (std::getline(ss, piece, ',')) mo.push_back(static_cast<uint32_t>(std::stoul(piece)));
                opts.maxord = std::move(mo);
            }
            MultiOutcome outc = arithmetic_multi(inputs, sys.target, sys.target_name, opts);
            if (!outc.found) {
                if (multi_flags.json) {
                    out << emit_json_not_found(outc, 0.0);
                } else {
                    out << "no ADE of componentwise order at most (";
                    for (size_t i = 0; i < outc.bounds.size(); ++i)
                        out << (i ? "," : "") << outc.bounds[i];
                    out << ") was found\n";
                }
                return 2;
            }
            return emit_result(*outc.result, multi_flags, out);
        }

        if (verify->parsed()) {
            ParsedSystem sys = parse_system(slurp(verify_flags.input));
            const auto& indep = sys.ring->ctx()->indep;
            const int l = static_cast<int>(indep.size());

            std::ifstream rf(result_path);
            if (!rf) throw UsageError("cannot open result file: " + result_path);
            nlohmann::json rj = nlohmann::json::parse(rf, nullptr, true, true);
            if (!rj.contains("poly")) throw UsageError("result file carries no 'poly' field");
            std::string poly_text = rj["poly"].get<std::string>();

            size_t eqpos = series_spec.find('=');
            if (eqpos == std::string::npos)
                throw UsageError("--series expects 'name=expression'");
            std::string zname = series_spec.substr(0, eqpos);
            while (!zname.empty() && std::isspace(static_cast<unsigned char>(zname.back())))
                zname.pop_back();
            if (zname != sys.target_name)
                throw UsageError("series is for '" + zname + "' but the target is '" +
                                 sys.target_name + "'");

            auto rctx = std::make_shared<DiffContext>();
            rctx->indep = indep;
            rctx->indets.push_back({sys.target_name, std::vector<uint8_t>(static_cast<size_t>(l), 1)});
            auto rring = std::make_shared<DiffRing>(rctx);
            RatExpr parsed = parse_rat_expression(rring, poly_text);
            if (!parsed.den.poly.is_constant())
                throw UsageError("result polynomial must not be rational");

            std::map<std::string, Rational> params = parse_params(param_kvs);
            SeriesEval eval(series_spec.substr(eqpos + 1), indep, params, trunc);
            TruncSeries zseries = eval.run();

            bool ok = certify(parsed.num.poly, *rctx, {zseries}, params, trunc);
            out << (ok ? "certified: the series annihilates the ADE up to the trusted degree"
                       : "NOT certified: nonzero residual below the trusted degree")
                << "\n";
            return ok ? 0 : 2;
        }

        if (rank->parsed()) {
            if (rank_l < 1) throw UsageError("--l must be at least 1");
            if (!rank_tuple.empty()) {
                std::vector<uint32_t> t;
                std::stringstream ss(rank_tuple);
                std::string piece;
                while (std::getline(ss, piece, ',')) t.push_back(static_cast<uint32_t>(std::stoul(piece)));
                if (static_cast<int>(t.size()) != rank_l)
                    throw UsageError("tuple length does not match --l");
                out << sigma_rank({rank_l}, t) << "\n";
                return 0;
            }
            if (rank_index >= 0) {
                auto t = sigma_unrank({rank_l}, static_cast<uint64_t>(rank_index));
                for (size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
                out << "\n";
                return 0;
            }
            throw UsageError("rank needs --tuple or --index");
        }
    } catch (const BudgetExceeded& e) {
        if ((uni->parsed() && uni_flags.json) || (multi->parsed() && multi_flags.json) ||
            (unary->parsed() && unary_flags.json))
            out << emit_json_error(e.what());
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        bool json = (uni->parsed() && uni_flags.json) || (multi->parsed() && multi_flags.json) ||
                    (unary->parsed() && unary_flags.json);
        if (json) out << emit_json_error(e.what());
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 64;
}

}  // namespace dalg
