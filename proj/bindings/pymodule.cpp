#include "halo/json_io.hpp"
#include "halo/spectral.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

namespace py = pybind11;
using namespace halo;

namespace {

Rat rat_arg(const std::string& s) { return parse_rat(s); }

RatMatrix matrix_arg(const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) throw std::invalid_argument("matrix: no rows");
    RatMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw std::invalid_argument("matrix: ragged rows");
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = parse_rat(rows[i][j]);
    }
    return m;
}

std::vector<Rat> vector_arg(const std::vector<std::string>& xs) {
    std::vector<Rat> v;
    v.reserve(xs.size());
    for (const auto& s : xs) v.push_back(parse_rat(s));
    return v;
}

std::string cmp_name(Cmp c) {
    switch (c) {
        case Cmp::Less: return "less";
        case Cmp::Equal: return "equal";
        case Cmp::Greater: return "greater";
        case Cmp::Unknown: return "unknown";
    }
    return "unknown";
}

py::dict bounds_dict(const BoundsInfo& b) {
    py::dict d;
    d["lower"] = b.lower.str();
    d["upper"] = b.upper.str();
    d["bounds_meet"] = b.bounds_meet();
    d["gap"] = b.gap;
    return d;
}

py::dict membership_dict(const MembershipCertificate& c) {
    py::dict d;
    d["member"] = c.member;
    py::list checks;
    for (const auto& chk : c.checks) {
        py::dict e;
        e["condition"] = chk.condition;
        e["ok"] = chk.ok;
        e["evidence"] = chk.evidence;
        checks.append(e);
    }
    d["checks"] = checks;
    return d;
}

}  // namespace

PYBIND11_MODULE(halocalc, m) {
    m.doc() = "certified computations in normed rings with relaxed triangle inequalities";

    py::class_<PowerValue>(m, "PowerValue")
        .def_static("of", [](const std::string& s) { return PowerValue::from_rat(rat_arg(s)); })
        .def_static("pow",
                    [](const std::string& b, const std::string& e) {
                        return PowerValue::pow_of(rat_arg(b), rat_arg(e));
                    })
        .def_property_readonly("exact", &PowerValue::is_exact)
        .def_property_readonly("rational", &PowerValue::is_rational)
        .def("__float__", &PowerValue::approx)
        .def("__str__", &PowerValue::str)
        .def("__repr__", [](const PowerValue& v) { return "PowerValue(" + v.str() + ")"; })
        .def("__eq__", [](const PowerValue& a, const PowerValue& b) {
            return PowerValue::cmp(a, b) == Cmp::Equal;
        })
        .def("__le__", [](const PowerValue& a, const PowerValue& b) {
            return cmp_is_leq(PowerValue::cmp(a, b));
        });

    m.def("cmp_power", [](const PowerValue& a, const PowerValue& b) {
        return cmp_name(PowerValue::cmp(a, b));
    });

    m.def("padic_abs", [](const std::string& x, const std::string& p) {
        return padic_abs(rat_arg(x), PAdicContext{Int(p)});
    });

    m.def("psd_leq_one", [](const std::vector<std::vector<std::string>>& g) {
        return psd_leq_one(matrix_arg(g));
    });

    m.def(
        "lp_norm",
        [](const std::vector<std::string>& xs, const std::string& p) {
            std::vector<PowerValue> vals;
            for (const auto& s : xs) vals.push_back(PowerValue::from_rat(rat_arg(s)));
            return lp_norm(vals, PExponent::parse(p));
        },
        py::arg("values"), py::arg("p"));

    m.def(
        "operator_norm",
        [](const std::vector<std::vector<std::string>>& a, const std::string& q,
           const std::string& context) {
            OpNormSpace space = context == "real"
                                    ? OpNormSpace::real(PExponent::parse(q))
                                    : OpNormSpace::p_adic(PAdicContext{Int(context)});
            return operator_norm(matrix_arg(a), space);
        },
        py::arg("matrix"), py::arg("q") = "2", py::arg("context") = "real",
        "context: 'real' or a prime (p-adic entrywise norm)");

    m.def(
        "check_halo_axioms",
        [](const std::string& config, long lo, long hi) {
            auto h = halo_from_json(Json::parse(config));
            std::vector<Rat> samples;
            for (long v = lo; v <= hi; ++v) samples.push_back(Rat(v));
            auto r = check_halo_axioms(h, samples);
            py::dict d;
            d["passed"] = r.passed;
            if (!r.passed) {
                d["failed_axiom"] = r.failed_axiom;
                d["witness"] =
                    py::make_tuple(rat_str(r.witness->first), rat_str(r.witness->second));
                d["detail"] = r.detail;
            }
            return d;
        },
        py::arg("config"), py::arg("lo") = -5, py::arg("hi") = 5);

    m.def(
        "renorm_infimum",
        [](const std::string& config, const std::string& p, const std::string& f,
           int max_parts) {
            auto h = halo_from_json(Json::parse(config));
            SearchBudget budget;
            budget.max_parts = max_parts;
            auto cert = renorm_infimum(h, PExponent::parse(p), rat_arg(f), budget);
            py::dict d = bounds_dict(cert);
            py::list parts;
            for (const auto& part : cert.witness_parts) parts.append(rat_str(part));
            d["witness_parts"] = parts;
            return d;
        },
        py::arg("config"), py::arg("p"), py::arg("f"), py::arg("max_parts") = 0);

    m.def(
        "tree_norm",
        [](const std::vector<std::string>& element, const std::string& c, int max_leaves) {
            auto arch = make_short_halo(RingId::Z, NormKind::Arch, 1, PExponent::of(1));
            std::vector<NormedLattice> lattices;
            for (std::size_t i = 0; i < element.size(); ++i)
                lattices.push_back(make_lq_lattice(1, PExponent::inf(), arch));
            std::vector<std::pair<const NormedLattice*, std::vector<Rat>>> parts;
            auto elems = vector_arg(element);
            for (std::size_t i = 0; i < elems.size(); ++i)
                parts.emplace_back(&lattices[i], std::vector<Rat>{elems[i]});
            SearchBudget budget;
            budget.max_leaves = max_leaves;
            auto cert = tree_norm(parts, PowerValue::from_rat(rat_arg(c)), budget);
            py::dict d = bounds_dict(cert);
            d["leaves"] = cert.witness.leaves.size();
            return d;
        },
        py::arg("element"), py::arg("c") = "2", py::arg("max_leaves") = 8);

    m.def(
        "presentation_norm",
        [](const std::vector<std::string>& target, const std::string& prime) {
            auto base_halo = make_short_halo(RingId::Z, NormKind::Arch, 1, PExponent::of(1));
            auto tgt = vector_arg(target);
            auto base = make_lq_lattice(tgt.size(), PExponent::of(1), base_halo);
            auto s = make_short_halo(RingId::Qp, NormKind::PAdic, 1, PExponent::inf(),
                                     PAdicContext{Int(prime)});
            return bounds_dict(presentation_norm(tgt, base, s));
        },
        py::arg("target"), py::arg("prime"));

    m.def("kn_check_real", [](const std::vector<std::vector<std::string>>& u) {
        return membership_dict(siso_membership_real(matrix_arg(u)));
    });
    m.def("kn_check_padic", [](const std::vector<std::vector<std::string>>& u,
                               const std::string& p) {
        return membership_dict(siso_membership_padic(matrix_arg(u), PAdicContext{Int(p)}));
    });
    m.def("kn_check_int", [](const std::vector<std::vector<std::string>>& u) {
        return membership_dict(siso_membership_int(matrix_arg(u)));
    });

    m.def("kn_enumerate", [](int n) {
        auto ms = enumerate_Kn_Z(static_cast<std::size_t>(n));
        py::list out;
        for (const auto& m0 : ms) {
            py::list rows;
            for (std::size_t i = 0; i < m0.rows(); ++i) {
                py::list row;
                for (std::size_t j = 0; j < m0.cols(); ++j) row.append(rat_str(m0.at(i, j)));
                rows.append(row);
            }
            out.append(rows);
        }
        return out;
    });

    m.def("kn_relations", [](int n) {
        auto rels = generate_relations(static_cast<std::size_t>(n));
        py::list out;
        for (const auto& r : rels) out.append(r.str());
        return out;
    });

    m.def("dual_basis_norm", [](int i, int j, int b, int n) {
        return dual_basis_norm({static_cast<std::size_t>(i), static_cast<std::size_t>(j), b},
                               static_cast<std::size_t>(n));
    });
}
