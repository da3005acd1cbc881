#include "halo/normed_set.hpp"

namespace halo {

PExponent PExponent::parse(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "oo") return inf();
    return of(parse_rat(s));
}

PowerValue max_norm(const std::vector<PowerValue>& xs) {
    if (xs.empty()) return PowerValue::zero();
    PowerValue best = xs[0];
    bool hull = false;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        switch (PowerValue::cmp(xs[i], best)) {
            case Cmp::Greater:
                best = xs[i];
                break;
            case Cmp::Less:
            case Cmp::Equal:
                break;
            case Cmp::Unknown:
                hull = true;
                break;
        }
    }
    if (!hull) return best;
    // Conservative hull: [max lo_i, max hi_i] still brackets the maximum.
    Rat lo = 0, hi = 0;
    for (const auto& x : xs) {
        auto e = x.enclosure();
        lo = std::max(lo, e.first);
        hi = std::max(hi, e.second);
    }
    return PowerValue::interval(lo, hi);
}

PowerValue lp_norm(const std::vector<PowerValue>& xs, const PExponent& p,
                   unsigned prec_bits) {
    if (xs.empty()) return PowerValue::zero();
    if (xs.size() == 1) return xs[0];
    if (p.infinite) return max_norm(xs);
    PowerValue sum = PowerValue::zero();
    for (const auto& x : xs) {
        if (x.is_zero()) continue;
        sum = sum.add(x.pow(p.value), prec_bits);
    }
    if (sum.is_zero()) return PowerValue::zero();
    return sum.pow(Rat(1) / p.value);
}

NormedSet flow_normed_set(const NormedSet& x, const Rat& t) {
    if (t <= 0) throw std::invalid_argument("flow_normed_set: t must be > 0");
    NormedSet out;
    out.elements = x.elements;
    for (const auto& [k, v] : x.norm) out.norm.emplace(k, v.pow(t));
    return out;
}

}  // namespace halo
