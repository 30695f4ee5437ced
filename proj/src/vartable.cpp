#include "dalg/vartable.hpp"

namespace dalg {

size_t VarKeyHash::operator()(const VarKey& k) const {
    auto mix = [](size_t h, size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); };
    size_t h = static_cast<size_t>(k.cls);
    h = mix(h, static_cast<size_t>(static_cast<uint32_t>(k.indet)));
    for (uint32_t v : k.index) h = mix(h, v);
    h = mix(h, std::hash<std::string>{}(k.name));
    return h;
}

int theta_compare(std::span<const uint32_t> a, std::span<const uint32_t> b) {
    uint64_t da = 0, db = 0;
    for (uint32_t v : a) da += v;
    for (uint32_t v : b) db += v;
    if (da != db) return da < db ? -1 : 1;
    size_t n = a.size() > b.size() ? a.size() : b.size();
    for (size_t i = n; i-- > 0;) {
        uint32_t ai = i < a.size() ? a[i] : 0;
        uint32_t bi = i < b.size() ? b[i] : 0;
        if (ai != bi) return ai < bi ? -1 : 1;
    }
    return 0;
}

int32_t VarTable::intern(const VarKey& k) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = lookup_.find(k);
    if (it != lookup_.end()) return it->second;
    int32_t idx = static_cast<int32_t>(keys_.size());
    keys_.push_back(k);
    lookup_.emplace(k, idx);
    return idx;
}

std::optional<int32_t> VarTable::find(const VarKey& k) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = lookup_.find(k);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

}  // namespace dalg
