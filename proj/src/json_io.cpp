#include "halo/json_io.hpp"

namespace halo {

Json rat_to_json(const Rat& r) { return rat_str(r); }

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) return parse_rat(j.get<std::string>());
    throw std::invalid_argument("expected a rational as \"num/den\" string");
}

Json power_to_json(const PowerValue& v) {
    Json j;
    if (v.is_exact()) {
        j["base"] = rat_str(v.base());
        j["exp"] = rat_str(v.exponent());
        if (v.is_rational()) j["value"] = rat_str(v.rat());
    } else {
        j["lo"] = rat_str(v.lo());
        j["hi"] = rat_str(v.hi());
    }
    return j;
}

PowerValue power_from_json(const Json& j) {
    if (j.is_string() || j.is_number_integer()) {
        return PowerValue::from_rat(rat_from_json(j));
    }
    if (j.is_object()) {
        if (j.contains("base")) {
            return PowerValue::pow_of(rat_from_json(j["base"]),
                                      j.contains("exp") ? rat_from_json(j["exp"]) : Rat(1));
        }
        if (j.contains("lo") && j.contains("hi")) {
            return PowerValue::interval(rat_from_json(j["lo"]), rat_from_json(j["hi"]));
        }
    }
    throw std::invalid_argument("expected a norm value (string or {base,exp}/{lo,hi})");
}

Json matrix_to_json(const RatMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_str(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

RatMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix: expected rows");
    std::size_t rows = j.size(), cols = j[0].size();
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols) throw std::invalid_argument("matrix: ragged rows");
        for (std::size_t k = 0; k < cols; ++k) m.at(i, k) = rat_from_json(j[i][k]);
    }
    return m;
}

std::vector<Rat> vector_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("vector: expected an array");
    std::vector<Rat> v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(rat_from_json(e));
    return v;
}

Json vector_to_json(const std::vector<Rat>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(rat_str(x));
    return out;
}

HaloDescriptor halo_from_json(const Json& j) {
    RingId ring;
    std::string rs = j.value("ring", "Z");
    if (rs == "Z") ring = RingId::Z;
    else if (rs == "Q" || rs == "R") ring = RingId::Q;
    else if (rs == "Qp") ring = RingId::Qp;
    else throw std::invalid_argument("halo config: unknown ring '" + rs + "'");

    NormKind kind;
    std::string ns = j.value("norm", "arch");
    if (ns == "arch") kind = NormKind::Arch;
    else if (ns == "trivial") kind = NormKind::Trivial;
    else if (ns == "padic") kind = NormKind::PAdic;
    else throw std::invalid_argument("halo config: unknown norm '" + ns + "'");

    Rat power = j.contains("power") ? rat_from_json(j["power"]) : Rat(1);
    std::optional<PAdicContext> padic;
    if (kind == NormKind::PAdic || ring == RingId::Qp) {
        if (!j.contains("prime")) throw std::invalid_argument("halo config: missing prime");
        padic = PAdicContext(Int(j["prime"].get<std::string>()));
    }

    std::string flavor = j.value("flavor", "short");
    if (flavor == "short") {
        PExponent p = j.contains("p") ? PExponent::parse(j["p"].get<std::string>())
                                      : PExponent::of(1);
        return make_short_halo(ring, kind, power, p, padic);
    }
    if (flavor == "lipschitz") {
        PowerValue c = j.contains("C") ? power_from_json(j["C"]) : PowerValue::from_rat(2);
        PowerValue d = j.contains("D") ? power_from_json(j["D"]) : PowerValue::one();
        return make_lipschitz_halo(ring, kind, power, c, d, padic);
    }
    throw std::invalid_argument("halo config: unknown flavor '" + flavor + "'");
}

Json halo_to_json(const HaloDescriptor& h) {
    Json j;
    j["ring"] = h.ring == RingId::Z ? "Z" : (h.ring == RingId::Q ? "Q" : "Qp");
    j["norm"] = h.kind == NormKind::Arch ? "arch"
                                         : (h.kind == NormKind::Trivial ? "trivial" : "padic");
    if (h.padic) j["prime"] = h.padic->p.str();
    j["power"] = rat_str(h.power);
    if (h.flavor == Flavor::Short) {
        j["flavor"] = "short";
        j["p"] = h.p.str();
    } else {
        j["flavor"] = "lipschitz";
        j["C"] = power_to_json(h.lip_c);
        j["D"] = power_to_json(h.lip_d);
    }
    return j;
}

HaloDescriptor halo_from_name(const std::string& name) {
    if (name == "Z" || name == "z-arch")
        return make_short_halo(RingId::Z, NormKind::Arch, 1, PExponent::of(1));
    if (name == "Z^2" || name == "z-arch-squared")
        return make_short_halo(RingId::Z, NormKind::Arch, 2, PExponent::of(Rat(1, 2)));
    if (name == "Z0" || name == "z-trivial")
        return make_short_halo(RingId::Z, NormKind::Trivial, 1, PExponent::inf());
    if (name == "R" || name == "Q" || name == "q-arch")
        return make_short_halo(RingId::Q, NormKind::Arch, 1, PExponent::of(1));
    if (name.rfind("Qp:", 0) == 0 || name.rfind("qp:", 0) == 0) {
        return make_short_halo(RingId::Qp, NormKind::PAdic, 1, PExponent::inf(),
                               PAdicContext(Int(name.substr(3))));
    }
    throw std::invalid_argument("unknown halo name '" + name + "'");
}

NormedLattice lattice_from_json(const Json& j) {
    HaloDescriptor base;
    if (!j.contains("base")) {
        base = make_short_halo(RingId::Z, NormKind::Arch, 1, PExponent::of(1));
    } else if (j["base"].is_string()) {
        base = halo_from_name(j["base"].get<std::string>());
    } else {
        base = halo_from_json(j["base"]);
    }
    std::size_t rank = j.value("rank", 1);
    PExponent q = j.contains("q") ? PExponent::parse(j["q"].get<std::string>())
                                  : PExponent::inf();
    return make_lq_lattice(rank, q, base);
}

Json bounds_to_json(const BoundsInfo& b) {
    Json j;
    j["lower"] = power_to_json(b.lower);
    j["upper"] = power_to_json(b.upper);
    j["bounds_meet"] = b.bounds_meet();
    j["gap"] = b.gap;
    return j;
}

Json membership_to_json(const MembershipCertificate& c) {
    Json j;
    j["verdict"] = c.member ? "member" : "non-member";
    Json checks = Json::array();
    for (const auto& chk : c.checks) {
        Json e;
        e["condition"] = chk.condition;
        e["ok"] = chk.ok;
        e["evidence"] = chk.evidence;
        checks.push_back(std::move(e));
    }
    j["checks"] = std::move(checks);
    return j;
}

namespace {

Json tree_node_to_json(const TreeDecomposition& t, int node,
                       const std::vector<PowerValue>& leaf_norms) {
    const auto& n = t.nodes[node];
    if (n.leaf >= 0) {
        Json leaf;
        leaf["component"] = t.leaves[n.leaf].component;
        leaf["element"] = vector_to_json(t.leaves[n.leaf].element);
        if (static_cast<std::size_t>(n.leaf) < leaf_norms.size())
            leaf["norm"] = power_to_json(leaf_norms[n.leaf]);
        return leaf;
    }
    Json pair = Json::array();
    pair.push_back(tree_node_to_json(t, n.left, leaf_norms));
    pair.push_back(tree_node_to_json(t, n.right, leaf_norms));
    return pair;
}

}  // namespace

Json tree_to_json(const TreeDecomposition& t, const std::vector<PowerValue>& leaf_norms) {
    if (t.empty()) return nullptr;
    return tree_node_to_json(t, t.root, leaf_norms);
}

Json pair_to_json(const MatrixPair& p) {
    Json j;
    j["U"] = matrix_to_json(p.u);
    j["W"] = matrix_to_json(p.w);
    return j;
}

MatrixPair pair_from_json(const Json& j) {
    return MatrixPair{matrix_from_json(j.at("U")), matrix_from_json(j.at("W"))};
}

}  // namespace halo
