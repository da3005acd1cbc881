#include "halo/isometry.hpp"

#include "halo/spectral.hpp"

#include <algorithm>
#include <sstream>

namespace halo {

MatrixPair involution(const MatrixPair& pair) {
    return MatrixPair{pair.w.transpose(), pair.u.transpose()};
}

PowerValue pair_norm(const MatrixPair& pair, const OpNormSpace& space, unsigned prec_bits) {
    return max_norm(
        {operator_norm(pair.u, space, prec_bits), operator_norm(pair.w, space, prec_bits)});
}

PowerValue dual_basis_norm(const DualBasisElement& e, std::size_t n) {
    if (e.i < 1 || e.i > n || e.j < 1 || e.j > n || (e.b != 0 && e.b != 1))
        throw std::invalid_argument("dual_basis_norm: index out of range");
    // Upper bound: |B_b[i,j]| <= |delta_j|_{l2} * |delta^i|_{l2-dual} *
    // ||(B_0, B_1)||, and both factors are computed unit vectors.
    std::vector<PowerValue> unit(n, PowerValue::zero());
    unit[e.j - 1] = PowerValue::one();
    PowerValue basis_vec_norm = lp_norm(unit, PExponent::of(2));
    std::vector<PowerValue> dual_unit(n, PowerValue::zero());
    dual_unit[e.i - 1] = PowerValue::one();
    PowerValue dual_vec_norm = lp_norm(dual_unit, PExponent::of(2));
    PowerValue upper = basis_vec_norm * dual_vec_norm;

    // Lower bound: evaluation at the matching matrix unit E_{i,j,b}, whose
    // pair norm is computed exactly.
    RatMatrix eij(n, n);
    eij.at(e.i - 1, e.j - 1) = 1;
    MatrixPair unit_pair{e.b == 0 ? eij : RatMatrix(n, n),
                         e.b == 1 ? eij : RatMatrix(n, n)};
    PowerValue denom = pair_norm(unit_pair, OpNormSpace::real(PExponent::of(2)));
    if (!denom.is_rational())
        throw std::logic_error("dual_basis_norm: unit pair norm not rational");
    PowerValue lower = PowerValue::from_rat(Rat(1) / denom.rat());

    if (!lower.known_equal(upper))
        throw std::logic_error("dual_basis_norm: bounds failed to meet");
    return upper;
}

namespace {

std::string matrix_str(const RatMatrix& m) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? "," : "") << rat_str(m.at(i, j));
    }
    os << "]";
    return os.str();
}

// x <= 1 tested through the flowed norm x^t; the verdict is t-invariant
// since x <= 1 iff x^t <= 1 for t > 0, which is the reason membership is
// flow invariant.
bool leq_one_flowed(const PowerValue& x, const Rat& flow_t) {
    return cmp_is_leq(PowerValue::cmp(x.pow(flow_t), PowerValue::one()));
}

}  // namespace

MembershipCertificate siso_membership_real(const RatMatrix& u, const Rat& flow_t) {
    if (!u.is_square()) throw std::invalid_argument("siso_membership_real: non-square");
    if (flow_t <= 0) throw std::invalid_argument("siso_membership_real: flow_t <= 0");
    MembershipCertificate cert;
    RatMatrix gram = u.transpose() * u;
    RatMatrix residual = gram - RatMatrix::identity(u.rows());
    const bool orthogonal = residual.is_zero();
    cert.checks.push_back({"gram_identity", orthogonal,
                           orthogonal ? "U^T U = I" : "U^T U - I = " + matrix_str(residual)});
    // Norm evidence; for non-members this pins down which side fails. The
    // PSD decision answers ||U||^t <= 1 for every flow parameter t > 0 at
    // once, since x <= 1 iff x^t <= 1.
    bool norm_ok = psd_leq_one(gram);
    cert.checks.push_back({"norm_leq_1", norm_ok,
                           norm_ok ? "||U||^t <= 1 (PSD of I - U^T U)"
                                   : "I - U^T U is not PSD"});
    auto inv = u.inverse();
    if (inv) {
        bool inv_ok = psd_leq_one(inv->transpose() * (*inv));
        cert.checks.push_back({"inverse_norm_leq_1", inv_ok,
                               inv_ok ? "||U^{-1}|| <= 1" : "I - U^{-T} U^{-1} is not PSD"});
    } else {
        cert.checks.push_back({"invertible", false, "det U = 0"});
    }
    cert.member = orthogonal;
    return cert;
}

MembershipCertificate siso_membership_padic(const RatMatrix& u, const PAdicContext& ctx,
                                            const Rat& flow_t) {
    if (!u.is_square()) throw std::invalid_argument("siso_membership_padic: non-square");
    if (flow_t <= 0) throw std::invalid_argument("siso_membership_padic: flow_t <= 0");
    MembershipCertificate cert;
    bool entries_ok = true;
    std::ostringstream entries_ev;
    for (std::size_t i = 0; i < u.rows(); ++i) {
        for (std::size_t j = 0; j < u.cols(); ++j) {
            const Rat& x = u.at(i, j);
            PowerValue a = padic_abs(x, ctx);
            if (!leq_one_flowed(a, flow_t)) {
                entries_ok = false;
                entries_ev << "v_" << ctx.p.str() << "(" << rat_str(x) << ") = "
                           << padic_valuation(x, ctx.p).str() << " < 0 at (" << i + 1 << ","
                           << j + 1 << ")";
                break;
            }
        }
        if (!entries_ok) break;
    }
    cert.checks.push_back({"entries_integral", entries_ok,
                           entries_ok ? "all entry valuations >= 0" : entries_ev.str()});
    Rat d = u.det();
    bool det_unit = d != 0 && padic_valuation(d, ctx.p) == 0;
    cert.checks.push_back({"det_unit", det_unit,
                           d == 0 ? "det U = 0"
                                  : "v_" + ctx.p.str() + "(det U) = " +
                                        padic_valuation(d, ctx.p).str()});
    cert.member = entries_ok && det_unit;
    return cert;
}

MembershipCertificate siso_membership_int(const RatMatrix& u, const Rat& flow_t) {
    if (!u.is_square()) throw std::invalid_argument("siso_membership_int: non-square");
    if (flow_t <= 0) throw std::invalid_argument("siso_membership_int: flow_t <= 0");
    MembershipCertificate cert;
    bool integral = u.is_integral();
    cert.checks.push_back({"entries_integral", integral,
                           integral ? "all entries in Z" : "non-integer entry present"});
    Rat d = integral ? u.det() : Rat(0);
    bool det_unit = integral && (d == 1 || d == -1);
    cert.checks.push_back({"det_unit", det_unit, "det U = " + rat_str(d)});
    bool orthogonal = integral && (u.transpose() * u == RatMatrix::identity(u.rows()));
    cert.checks.push_back(
        {"gram_identity", orthogonal, orthogonal ? "U^T U = I" : "U^T U != I"});
    // Norm route consistent with the flow.
    if (orthogonal) {
        cert.checks.push_back({"norm_leq_1", leq_one_flowed(PowerValue::one(), flow_t),
                               "||U|| = ||U^{-1}|| = 1"});
    }
    cert.member = integral && det_unit && orthogonal;
    return cert;
}

std::vector<RatMatrix> enumerate_Kn_Z(std::size_t n) {
    if (n < 1 || n > 4) throw std::invalid_argument("enumerate_Kn_Z: n must be 1..4");
    // Exhaustive over columns with entries in {-1, 0, 1}: integer columns of
    // l2 norm 1 are exactly +-e_i, and orthogonality forces distinct
    // supports. The recursion visits every candidate column set once.
    std::vector<RatMatrix> out;
    std::vector<std::pair<std::size_t, int>> cols;  // (support row, sign)
    std::vector<bool> used(n, false);
    std::function<void(std::size_t)> rec = [&](std::size_t col) {
        if (col == n) {
            RatMatrix m(n, n);
            for (std::size_t j = 0; j < n; ++j) m.at(cols[j].first, j) = cols[j].second;
            out.push_back(std::move(m));
            return;
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (used[row]) continue;
            for (int sign : {-1, 1}) {
                used[row] = true;
                cols.emplace_back(row, sign);
                rec(col + 1);
                cols.pop_back();
                used[row] = false;
            }
        }
    };
    rec(0);
    std::sort(out.begin(), out.end(), [n](const RatMatrix& a, const RatMatrix& b) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (a.at(i, j) != b.at(i, j)) return a.at(i, j) < b.at(i, j);
            }
        return false;
    });
    return out;
}

BilinearForm::BilinearForm(RatMatrix m) : phi(std::move(m)) {
    if (!phi.is_square()) throw std::invalid_argument("BilinearForm: non-square");
    if (!phi.is_integral()) throw std::invalid_argument("BilinearForm: entries must be in Z");
    if (phi.det() == 0) throw std::invalid_argument("BilinearForm: degenerate form");
}

MembershipCertificate siso_phi_membership(const RatMatrix& u, const BilinearForm& phi,
                                          PointContext context,
                                          std::optional<PAdicContext> prime,
                                          const Rat& flow_t) {
    if (!u.is_square() || u.rows() != phi.phi.rows())
        throw std::invalid_argument("siso_phi_membership: dimension mismatch");
    MembershipCertificate cert;
    // Algebraic condition: U preserves the form.
    RatMatrix lhs = u.transpose() * phi.phi * u;
    bool preserves = lhs == phi.phi;
    cert.checks.push_back({"form_preserved", preserves,
                           preserves ? "U^T Phi U = Phi"
                                     : "U^T Phi U = " + matrix_str(lhs)});
    if (!preserves) {
        cert.member = false;
        return cert;
    }
    // Norm condition on the embedded pair (U, [sigma_phi(U)]^T) with
    // sigma_phi(U) = Phi^{-1} U^T Phi.
    auto phi_inv = phi.phi.inverse();
    RatMatrix sigma = (*phi_inv) * u.transpose() * phi.phi;
    RatMatrix w = sigma.transpose();
    MembershipCertificate ambient;
    switch (context) {
        case PointContext::Real:
            ambient = siso_membership_real(u, flow_t);
            break;
        case PointContext::PAdic:
            if (!prime) throw std::invalid_argument("siso_phi_membership: missing prime");
            ambient = siso_membership_padic(u, *prime, flow_t);
            break;
        case PointContext::Int:
            ambient = siso_membership_int(u, flow_t);
            break;
    }
    // The pair condition U W^T = I holds by construction when the form is
    // preserved; record it as evidence.
    RatMatrix prod = u * w.transpose();
    bool pair_ok = prod == RatMatrix::identity(u.rows());
    cert.checks.push_back({"pair_inverse", pair_ok,
                           pair_ok ? "U [sigma_phi(U)] = I" : matrix_str(prod)});
    for (auto& c : ambient.checks) cert.checks.push_back(std::move(c));
    cert.member = preserves && pair_ok && ambient.member;
    return cert;
}

std::string RelationPoly::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Iterate high-degree monomials first so constants print last.
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const auto& [mono, coeff] = *it;
        Int c = coeff;
        if (first) {
            if (c < 0) { os << "-"; c = -c; }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        bool need_coeff = mono.empty() || c != 1;
        if (need_coeff) os << c.str();
        for (std::size_t k = 0; k < mono.size(); ++k) {
            if (k > 0 || need_coeff) os << "*";
            os << "x(" << mono[k].i << "," << mono[k].j << "," << mono[k].b << ")";
        }
    }
    return os.str();
}

Rat RelationPoly::evaluate(const MatrixPair& at) const {
    Rat acc = 0;
    for (const auto& [mono, coeff] : terms) {
        Rat term(coeff);
        for (const auto& v : mono) {
            const RatMatrix& m = v.b == 0 ? at.u : at.w;
            term *= m.at(v.i - 1, v.j - 1);
        }
        acc += term;
    }
    return acc;
}

std::vector<RelationPoly> generate_relations(std::size_t n) {
    if (n < 1) throw std::invalid_argument("generate_relations: n must be >= 1");
    std::vector<RelationPoly> out;
    auto add_unique = [&](RelationPoly&& p) {
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
    };
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            // sum_k x_{i,k,0} x_{j,k,1} - delta_{ij}  (U W^T = I)
            RelationPoly p;
            for (std::size_t k = 1; k <= n; ++k) {
                RelationPoly::Monomial mono{{i, k, 0}, {j, k, 1}};
                std::sort(mono.begin(), mono.end());
                p.terms[mono] += 1;
            }
            if (i == j) p.terms[{}] -= 1;
            add_unique(std::move(p));
            // sum_k x_{k,i,1} x_{k,j,0} - delta_{ij}  (W^T U = I)
            RelationPoly q;
            for (std::size_t k = 1; k <= n; ++k) {
                RelationPoly::Monomial mono{{k, i, 1}, {k, j, 0}};
                std::sort(mono.begin(), mono.end());
                q.terms[mono] += 1;
            }
            if (i == j) q.terms[{}] -= 1;
            add_unique(std::move(q));
        }
    }
    return out;
}

MatrixPair iota_pair(const MatrixPair& functional, const Rat& scalar) {
    return MatrixPair{functional.u.scaled(scalar), functional.w.scaled(scalar)};
}

}  // namespace halo
