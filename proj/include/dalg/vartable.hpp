#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace dalg {

// Class ranking used as the default skeleton of every monomial order:
// Auxiliary > Deriv > Independent > Parameter (lower enum value = higher rank).
enum class VarClass : uint8_t { Auxiliary = 0, Deriv = 1, Independent = 2, Parameter = 3 };

// Descriptor of one polynomial variable. For Deriv variables `indet` is the
// differential indeterminate id and `index` its derivative multi-index; the
// other classes carry just a name.
struct VarKey {
    VarClass cls = VarClass::Parameter;
    int32_t indet = -1;
    std::vector<uint32_t> index;
    std::string name;

    static VarKey auxiliary(std::string n) { return {VarClass::Auxiliary, -1, {}, std::move(n)}; }
    static VarKey independent(std::string n) { return {VarClass::Independent, -1, {}, std::move(n)}; }
    static VarKey parameter(std::string n) { return {VarClass::Parameter, -1, {}, std::move(n)}; }
    static VarKey deriv(int32_t indet, std::vector<uint32_t> idx) {
        return {VarClass::Deriv, indet, std::move(idx), {}};
    }

    bool operator==(const VarKey&) const = default;

    // Derivative order of a Deriv key (sum of the multi-index), 0 otherwise.
    uint64_t total_order() const {
        uint64_t s = 0;
        for (uint32_t v : index) s += v;
        return s;
    }
};

struct VarKeyHash {
    size_t operator()(const VarKey& k) const;
};

// Graded co-lexicographic comparison of derivative multi-indices: first by
// total order, ties resolved by the rightmost differing component (smaller
// component there = smaller index). Returns -1/0/+1.
int theta_compare(std::span<const uint32_t> a, std::span<const uint32_t> b);

// Dense, append-only registry of polynomial variables. Indices are stable;
// interning is guarded so derivations may register descriptors concurrently.
class VarTable {
  public:
    VarTable() = default;
    VarTable(const VarTable& o) : keys_(o.keys_), lookup_(o.lookup_) {}
    VarTable& operator=(const VarTable&) = delete;

    // Returns the dense index of `k`, appending it if new.
    int32_t intern(const VarKey& k);
    std::optional<int32_t> find(const VarKey& k) const;
    const VarKey& key(int32_t idx) const { return keys_[static_cast<size_t>(idx)]; }
    int32_t size() const { return static_cast<int32_t>(keys_.size()); }

  private:
    std::vector<VarKey> keys_;
    std::unordered_map<VarKey, int32_t, VarKeyHash> lookup_;
    mutable std::mutex mu_;
};

}  // namespace dalg
