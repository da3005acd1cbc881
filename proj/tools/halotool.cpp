#include "halo/json_io.hpp"
#include "halo/spectral.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using halo::Json;

constexpr const char* kVersion = "0.1.0";

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << v;
    return os.str();
}

Json load_json_arg(const std::string& arg) {
    // Inline JSON when it looks like JSON, otherwise a file path.
    std::string text = arg;
    if (!arg.empty() && arg[0] != '[' && arg[0] != '{') {
        std::ifstream in(arg);
        if (!in) throw CLI::ValidationError("cannot open file '" + arg + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    return Json::parse(text);
}

std::vector<halo::Rat> parse_range(const std::string& spec) {
    // "a..b" inclusive.
    auto dots = spec.find("..");
    if (dots == std::string::npos)
        throw CLI::ValidationError("range must look like '-5..5'");
    halo::Rat lo = halo::parse_rat(spec.substr(0, dots));
    halo::Rat hi = halo::parse_rat(spec.substr(dots + 2));
    if (!halo::is_integer(lo) || !halo::is_integer(hi) || lo > hi)
        throw CLI::ValidationError("range endpoints must be integers with lo <= hi");
    std::vector<halo::Rat> out;
    for (halo::Rat v = lo; v <= hi; v += 1) out.push_back(v);
    return out;
}

struct ContextSpec {
    bool padic = false;
    bool integral = false;
    std::optional<halo::PAdicContext> prime;
};

ContextSpec parse_context(const std::string& s) {
    ContextSpec ctx;
    if (s == "real") return ctx;
    if (s == "int") {
        ctx.integral = true;
        return ctx;
    }
    if (s.rfind("padic:", 0) == 0) {
        ctx.padic = true;
        ctx.prime = halo::PAdicContext(halo::Int(s.substr(6)));
        return ctx;
    }
    throw CLI::ValidationError("context must be real, int or padic:P");
}

void render_table(const Json& j, std::ostream& os, int indent = 0) {
    std::string pad(indent, ' ');
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_object() || v.is_array()) {
                os << pad << k << ":\n";
                render_table(v, os, indent + 2);
            } else {
                os << pad << k << ": " << v.dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_object() || v.is_array()) {
                render_table(v, os, indent + 2);
                os << pad << "-\n";
            } else {
                os << pad << "- " << v.dump() << "\n";
            }
        }
    } else {
        os << pad << j.dump() << "\n";
    }
}

struct Report {
    Json body;
    int exit_code = 0;
};

int emit(const Report& report, const std::vector<std::string>& argv,
         const std::string& digest_src, const std::string& output, bool timing,
         double elapsed_ms) {
    Json out;
    out["tool"] = "halotool";
    out["version"] = kVersion;
    out["command"] = argv;
    out["inputs_digest"] = hex64(fnv1a(digest_src));
    out["results"] = report.body;
    if (timing) out["timing_ms"] = elapsed_ms;
    if (output == "table") {
        render_table(out, std::cout);
    } else {
        std::cout << out.dump(2) << "\n";
    }
    return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified workbench for relaxed-triangle normed rings"};
    app.require_subcommand(1);

    std::string output = "json";
    bool no_timing = false;
    app.add_option("--output", output, "json|table")->check(CLI::IsMember({"json", "table"}));
    app.add_flag("--no-timing", no_timing, "omit the timing field (deterministic output)");

    // halo-check
    auto* halo_check = app.add_subcommand("halo-check", "check halo axioms on a sample range");
    std::string hc_config, hc_samples = "-5..5";
    halo_check->add_option("--config", hc_config, "halo config (file or inline JSON)")
        ->required();
    halo_check->add_option("--samples", hc_samples, "integer range like -5..5");

    // renorm
    auto* renorm = app.add_subcommand("renorm", "re-normalization infimum |f|_{H,p}");
    std::string rn_config, rn_p = "1", rn_element;
    int rn_budget = 0;
    renorm->add_option("--config", rn_config, "halo config")->required();
    renorm->add_option("--p", rn_p, "target exponent (rational or inf)");
    renorm->add_option("--element", rn_element, "ring element")->required();
    renorm->add_option("--budget", rn_budget, "max parts (0: derive from the element)");

    // treenorm
    auto* treenorm = app.add_subcommand("treenorm", "Lipschitz direct-sum tree norm");
    std::string tn_config, tn_element, tn_c = "2";
    int tn_budget = 8;
    treenorm->add_option("--config", tn_config,
                         "direct sum config {\"components\":[lattice...]}");
    treenorm->add_option("--element", tn_element, "target, e.g. \"[2,2]\"")->required();
    treenorm->add_option("--C", tn_c, "Lipschitz constant");
    treenorm->add_option("--budget", tn_budget, "max leaves");

    // opnorm
    auto* opnorm = app.add_subcommand("opnorm", "operator norm of a matrix");
    std::string on_matrix, on_q = "2", on_context = "real";
    opnorm->add_option("--matrix", on_matrix, "matrix (file or inline JSON)")->required();
    opnorm->add_option("--q", on_q, "1|2|inf");
    opnorm->add_option("--context", on_context, "real or padic:P");

    // kn
    auto* kn = app.add_subcommand("kn", "short isometry groups of GL_n");
    kn->require_subcommand(1);
    auto* kn_check = kn->add_subcommand("check", "membership of a matrix");
    std::string knc_context = "real", knc_matrix, knc_phi, knc_expect;
    std::string knc_flow = "1";
    kn_check->add_option("--context", knc_context, "real, int or padic:P");
    kn_check->add_option("--matrix", knc_matrix, "matrix (file or inline JSON)")->required();
    kn_check->add_option("--phi", knc_phi, "bilinear form matrix (optional)");
    kn_check->add_option("--flow", knc_flow, "flow parameter t > 0 on the base");
    kn_check->add_option("--expect", knc_expect, "member|non-member")
        ->check(CLI::IsMember({"member", "non-member", ""}));
    auto* kn_enum = kn->add_subcommand("enumerate", "integer points for n <= 4");
    int kne_n = 2;
    kn_enum->add_option("--n", kne_n, "matrix size")->required();
    auto* kn_rel = kn->add_subcommand("relations", "defining polynomial relations");
    int knr_n = 2;
    kn_rel->add_option("--n", knr_n, "matrix size")->required();

    // tensor
    auto* tensor = app.add_subcommand("tensor", "scalar extension norms");
    tensor->require_subcommand(1);
    auto* pres = tensor->add_subcommand("presentation-norm",
                                        "presentation infimum over the extension");
    std::string pn_base, pn_context = "padic:2", pn_target;
    int pn_budget = 8;
    pres->add_option("--base", pn_base, "base lattice config");
    pres->add_option("--context", pn_context, "real or padic:P");
    pres->add_option("--target", pn_target, "target vector over the extension")->required();
    pres->add_option("--budget", pn_budget, "search budget");

    std::vector<std::string> argv_echo(argv, argv + argc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    auto started = std::chrono::steady_clock::now();
    Report report;
    std::string digest_src;

    try {
        if (*halo_check) {
            Json cfg = load_json_arg(hc_config);
            auto h = halo::halo_from_json(cfg);
            auto samples = parse_range(hc_samples);
            auto r = halo::check_halo_axioms(h, samples);
            digest_src = "halo-check|" + cfg.dump() + "|" + hc_samples;
            report.body["halo"] = halo::halo_to_json(h);
            report.body["samples"] = hc_samples;
            report.body["passed"] = r.passed;
            if (!r.passed) {
                report.body["failed_axiom"] = r.failed_axiom;
                report.body["witness"] = Json::array(
                    {halo::rat_str(r.witness->first), halo::rat_str(r.witness->second)});
                report.body["detail"] = r.detail;
                report.exit_code = 1;
            }
            report.body["notes"] = r.notes;
        } else if (*renorm) {
            Json cfg = load_json_arg(rn_config);
            auto h = halo::halo_from_json(cfg);
            halo::Rat f = halo::parse_rat(rn_element);
            halo::SearchBudget budget;
            budget.max_parts = rn_budget;
            auto cert = halo::renorm_infimum(h, halo::PExponent::parse(rn_p), f, budget);
            digest_src = "renorm|" + cfg.dump() + "|" + rn_p + "|" + rn_element + "|" +
                         std::to_string(cert.effective_max_parts);
            report.body["halo"] = halo::halo_to_json(h);
            report.body["p"] = rn_p;
            report.body["element"] = rn_element;
            report.body["budget_parts"] = cert.effective_max_parts;
            report.body["bounds"] = halo::bounds_to_json(cert);
            report.body["witness_parts"] = halo::vector_to_json(cert.witness_parts);
            if (cert.gap) report.exit_code = 3;
        } else if (*treenorm) {
            std::vector<halo::Rat> element =
                halo::vector_from_json(Json::parse(tn_element));
            std::vector<halo::NormedLattice> lattices;
            Json cfg;
            if (!tn_config.empty()) {
                cfg = load_json_arg(tn_config);
                for (const auto& comp : cfg.at("components"))
                    lattices.push_back(halo::lattice_from_json(comp));
            } else {
                cfg = nullptr;
                auto arch = halo::make_short_halo(halo::RingId::Z, halo::NormKind::Arch, 1,
                                                  halo::PExponent::of(1));
                for (std::size_t i = 0; i < element.size(); ++i)
                    lattices.push_back(halo::make_lq_lattice(1, halo::PExponent::inf(), arch));
            }
            std::size_t total_rank = 0;
            for (const auto& lat : lattices) total_rank += lat.rank;
            if (total_rank != element.size())
                throw CLI::ValidationError("element length must match the summand ranks");
            std::vector<std::pair<const halo::NormedLattice*, std::vector<halo::Rat>>> parts;
            std::size_t off = 0;
            for (const auto& lat : lattices) {
                parts.emplace_back(&lat, std::vector<halo::Rat>(element.begin() + off,
                                                                element.begin() + off + lat.rank));
                off += lat.rank;
            }
            halo::SearchBudget budget;
            budget.max_leaves = tn_budget;
            auto c = halo::PowerValue::from_rat(halo::parse_rat(tn_c));
            auto cert = halo::tree_norm(parts, c, budget);
            digest_src = "treenorm|" + cfg.dump() + "|" + tn_element + "|" + tn_c + "|" +
                         std::to_string(tn_budget);
            report.body["element"] = tn_element;
            report.body["C"] = tn_c;
            report.body["budget_leaves"] = tn_budget;
            report.body["bounds"] = halo::bounds_to_json(cert);
            report.body["witness_tree"] =
                halo::tree_to_json(cert.witness, cert.witness_leaf_norms);
            if (cert.gap) report.exit_code = 3;
        } else if (*opnorm) {
            Json mj = load_json_arg(on_matrix);
            auto a = halo::matrix_from_json(mj);
            auto ctx = parse_context(on_context);
            if (ctx.integral) throw CLI::ValidationError("opnorm context must be real or padic:P");
            halo::OpNormSpace space;
            if (ctx.padic) {
                // p-adic operator norms support q = inf only; honor an
                // explicit conflicting --q by letting the library reject it.
                halo::PExponent q = opnorm->count("--q") ? halo::PExponent::parse(on_q)
                                                         : halo::PExponent::inf();
                space = halo::OpNormSpace{true, q, ctx.prime};
            } else {
                space = halo::OpNormSpace::real(halo::PExponent::parse(on_q));
            }
            auto v = halo::operator_norm(a, space);
            digest_src = "opnorm|" + mj.dump() + "|" + on_q + "|" + on_context;
            report.body["matrix"] = halo::matrix_to_json(a);
            report.body["q"] = ctx.padic ? "inf" : on_q;
            report.body["context"] = on_context;
            report.body["norm"] = halo::power_to_json(v);
        } else if (*kn_check) {
            Json mj = load_json_arg(knc_matrix);
            auto u = halo::matrix_from_json(mj);
            auto ctx = parse_context(knc_context);
            halo::Rat flow_t = halo::parse_rat(knc_flow);
            halo::MembershipCertificate cert;
            Json phi_json = nullptr;
            if (!knc_phi.empty()) {
                phi_json = load_json_arg(knc_phi);
                halo::BilinearForm phi(halo::matrix_from_json(phi_json));
                halo::PointContext pc = ctx.padic ? halo::PointContext::PAdic
                                                  : (ctx.integral ? halo::PointContext::Int
                                                                  : halo::PointContext::Real);
                cert = halo::siso_phi_membership(u, phi, pc, ctx.prime, flow_t);
            } else if (ctx.padic) {
                cert = halo::siso_membership_padic(u, *ctx.prime, flow_t);
            } else if (ctx.integral) {
                cert = halo::siso_membership_int(u, flow_t);
            } else {
                cert = halo::siso_membership_real(u, flow_t);
            }
            digest_src = "kn-check|" + mj.dump() + "|" + knc_context + "|" + phi_json.dump() +
                         "|" + knc_flow;
            report.body["matrix"] = halo::matrix_to_json(u);
            report.body["context"] = knc_context;
            if (!knc_phi.empty()) report.body["phi"] = phi_json;
            report.body["flow"] = knc_flow;
            report.body["membership"] = halo::membership_to_json(cert);
            if (!knc_expect.empty()) {
                bool expected = knc_expect == "member";
                report.body["expect"] = knc_expect;
                if (expected != cert.member) report.exit_code = 1;
            }
        } else if (*kn_enum) {
            auto ms = halo::enumerate_Kn_Z(static_cast<std::size_t>(kne_n));
            digest_src = "kn-enumerate|" + std::to_string(kne_n);
            report.body["n"] = kne_n;
            report.body["count"] = ms.size();
            Json arr = Json::array();
            for (const auto& m : ms) arr.push_back(halo::matrix_to_json(m));
            report.body["matrices"] = std::move(arr);
        } else if (*kn_rel) {
            auto rels = halo::generate_relations(static_cast<std::size_t>(knr_n));
            digest_src = "kn-relations|" + std::to_string(knr_n);
            report.body["n"] = knr_n;
            report.body["count"] = rels.size();
            Json arr = Json::array();
            for (const auto& r : rels) arr.push_back(r.str());
            report.body["relations"] = std::move(arr);
        } else if (*pres) {
            Json base_cfg = pn_base.empty() ? Json(nullptr) : load_json_arg(pn_base);
            std::vector<halo::Rat> target = halo::vector_from_json(Json::parse(pn_target));
            auto ctx = parse_context(pn_context);
            halo::NormedLattice base =
                base_cfg.is_null()
                    ? halo::make_lq_lattice(target.size(), halo::PExponent::of(1),
                                            halo::make_short_halo(halo::RingId::Z,
                                                                  halo::NormKind::Arch, 1,
                                                                  halo::PExponent::of(1)))
                    : halo::lattice_from_json(base_cfg);
            halo::HaloDescriptor s =
                ctx.padic
                    ? halo::make_short_halo(halo::RingId::Qp, halo::NormKind::PAdic, 1,
                                            halo::PExponent::inf(), ctx.prime)
                    : halo::make_short_halo(halo::RingId::Q, halo::NormKind::Arch, 1,
                                            halo::PExponent::of(1));
            halo::SearchBudget budget;
            budget.max_parts = pn_budget;
            auto cert = halo::presentation_norm(target, base, s, budget);
            digest_src = "tensor-presentation|" + base_cfg.dump() + "|" + pn_context + "|" +
                         pn_target;
            report.body["context"] = pn_context;
            report.body["target"] = pn_target;
            report.body["budget"] = pn_budget;
            report.body["bounds"] = halo::bounds_to_json(cert);
            Json wit = Json::array();
            for (const auto& [f, s_val] : cert.witness.terms) {
                Json term;
                term["f"] = halo::vector_to_json(f);
                term["s"] = halo::rat_str(s_val);
                wit.push_back(std::move(term));
            }
            report.body["witness_presentation"] = std::move(wit);
            if (cert.gap) report.exit_code = 3;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    double elapsed_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - started)
                            .count();
    return emit(report, argv_echo, digest_src, output, !no_timing, elapsed_ms);
}
