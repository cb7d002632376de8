// Command-line front door: orbit decompositions, genus reports, cusp data,
// congruence verdicts, Nielsen reports, the integral tree, strong
// approximation and Frobenius checks.
//
// Exit codes: 0 = all verdicts pass, 1 = usage error, 2 = a computed verdict
// falsifies an expected invariant (reproduction data is in the report).

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "markoff/action.hpp"
#include "markoff/arith.hpp"
#include "markoff/cache.hpp"
#include "markoff/congruence.hpp"
#include "markoff/cusp_comb.hpp"
#include "markoff/groups.hpp"
#include "markoff/markoff_z.hpp"
#include "markoff/modular.hpp"
#include "markoff/nielsen.hpp"
#include "markoff/surface.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

struct RunConfig {
    std::int64_t p = 0;
    std::int64_t t = -2;
    bool all_t = false;
    std::uint64_t ell = 0;
    std::string group_file;
    std::uint64_t bound = 10000;
    std::uint64_t n = 0;
    std::string format = "json";  // json|csv|table
    std::string cache_dir;
    unsigned threads = 1;
    std::uint64_t p_max = 3000;  // safety cap for surface enumeration
    std::string restrict_to = "star";
    std::string gens = "default";
    std::int64_t higman_order = 0;
};

json report_header(const RunConfig& cfg, const std::string& gsid) {
    json j;
    j["tool_version"] = kToolVersion;
    j["p"] = cfg.p;
    j["t"] = cfg.t;
    j["generator_set"] = gsid;
    return j;
}

std::string cache_dir_of(const RunConfig& cfg) {
    if (const char* env = std::getenv("MARKOFF_CACHE_DIR")) return env;
    return cfg.cache_dir;
}

markoff::surface::PointTable load_or_enumerate(const RunConfig& cfg) {
    std::string dir = cache_dir_of(cfg);
    std::uint32_t p = static_cast<std::uint32_t>(cfg.p);
    if (!dir.empty()) {
        markoff::arith::PrimeField F(p);
        std::string path = dir + "/" + markoff::cache::table_cache_name(p, F.reduce(cfg.t));
        if (auto cached = markoff::cache::load_table(path, p, cfg.t)) return *cached;
        auto table = markoff::surface::PointTable::enumerate(p, cfg.t, cfg.threads);
        std::filesystem::create_directories(dir);
        markoff::cache::save_table(path, table);
        return table;
    }
    return markoff::surface::PointTable::enumerate(p, cfg.t, cfg.threads);
}

std::vector<markoff::action::Gen> gen_set(const RunConfig& cfg) {
    if (cfg.gens == "gamma") {
        auto g = markoff::action::gamma_gens();
        return {g.begin(), g.end()};
    }
    if (cfg.gens == "rot1") return {markoff::action::Gen::Rot1};
    auto g = markoff::action::default_gens();
    return {g.begin(), g.end()};
}

void require_desk_scale(const RunConfig& cfg) {
    if (cfg.p < 2 || std::uint64_t(cfg.p) > cfg.p_max)
        throw std::invalid_argument("p exceeds the configured safety cap (--p-max)");
}

int cmd_orbits(const RunConfig& cfg) {
    require_desk_scale(cfg);
    auto table = load_or_enumerate(cfg);
    auto gens = gen_set(cfg);
    auto restrict = cfg.restrict_to == "all" ? markoff::action::Restrict::All
                                             : markoff::action::Restrict::Star;
    auto dec = markoff::action::orbit_decompose(table, gens, restrict);

    std::string dir = cache_dir_of(cfg);
    if (!dir.empty()) {
        std::filesystem::create_directories(dir);
        markoff::cache::save_orbits(
            dir + "/" + markoff::cache::orbit_cache_name(table.p(), table.t(), dec.generator_set_id()),
            table.p(), table.t(), dec);
    }

    json j = report_header(cfg, dec.generator_set_id());
    j["points"] = table.size();
    j["star_points"] = table.star_size();
    j["restrict"] = cfg.restrict_to;
    j["transitive"] = dec.transitive();
    json orbits = json::array();
    for (const auto& orb : dec.orbits) {
        auto rep = table.unpack(orb.rep_key);
        orbits.push_back({{"rep", {rep.x, rep.y, rep.z}}, {"size", orb.size}});
    }
    j["orbits"] = orbits;
    if (cfg.format == "table") {
        std::cout << "p = " << cfg.p << "  t = " << cfg.t << "  gens = " << dec.generator_set_id()
                  << "\n"
                  << "orbits: " << dec.orbits.size() << (dec.transitive() ? " (transitive)" : "")
                  << "\n";
        for (const auto& orb : dec.orbits) {
            auto rep = table.unpack(orb.rep_key);
            std::cout << "  (" << rep.x << "," << rep.y << "," << rep.z << ")  size " << orb.size
                      << "\n";
        }
        return 0;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_genus(const RunConfig& cfg) {
    require_desk_scale(cfg);
    auto rep = markoff::modular::genus(static_cast<std::uint32_t>(cfg.p));
    json j = report_header(cfg, "Gamma0+Gamma1728+Rot1");
    j["degree"] = rep.degree;
    j["transitive"] = rep.transitive;
    j["fibers"] = {{"over_0", rep.profile.fiber0.size()},
                   {"over_1728", rep.profile.fiber1728.size()},
                   {"over_inf", rep.profile.cusps.size()}};
    j["cusps"] = rep.profile.cusps;
    j["genus_rh"] = rep.genus_rh;
    j["genus_closed"] = rep.genus_closed.str();
    j["epsilon"] = rep.epsilon.str();
    if (cfg.format == "table") {
        std::cout << "p = " << cfg.p << "  degree " << rep.degree << "  fibers "
                  << rep.profile.fiber0.size() << "/" << rep.profile.fiber1728.size() << "/"
                  << rep.profile.cusps.size() << "  genus " << rep.genus_rh << "\n";
        return 0;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_cusps(const RunConfig& cfg) {
    auto G = markoff::groups::load_group_spec(cfg.group_file);
    auto classes = markoff::cusp_comb::delta_classes(G);
    json j;
    j["tool_version"] = kToolVersion;
    j["group_file"] = cfg.group_file;
    j["group_order"] = G.size();
    json recs = json::array();
    bool all_ok = true;
    for (const auto& dc : classes) {
        auto rec = markoff::cusp_comb::cusp_record(G, dc.u, dc.h);
        bool exact = rec.A_order * rec.k == G.center().size() * G.order(dc.u);
        all_ok = all_ok && exact && (rec.width == dc.width);
        recs.push_back({{"u", dc.u},
                        {"h", dc.h},
                        {"higman_class", rec.higman_class},
                        {"width", dc.width},
                        {"k", rec.k},
                        {"M_order", rec.M_order},
                        {"A_order", rec.A_order},
                        {"vertical_order", rec.vertical_order},
                        {"exact_sequence_ok", exact}});
    }
    j["cusps"] = recs;
    j["all_exact"] = all_ok;
    std::cout << j.dump(2) << "\n";
    return all_ok ? 0 : 2;
}

int run_congruence_for_t(const RunConfig& cfg, std::int64_t t, bool& any_fail, std::ostream& out) {
    auto verdicts = markoff::congruence::verify_surface(static_cast<std::uint32_t>(cfg.p), t,
                                                        cfg.threads);
    for (const auto& v : verdicts) {
        if (cfg.ell != 0 && v.ell != cfg.ell) continue;
        if (!v.passed) any_fail = true;
        out << v.p << ',' << v.t << ',' << v.rep_key << ',' << v.orbit_size << ','
            << markoff::congruence::rule_name(v.rule) << ',' << v.modulus << ','
            << (v.passed ? "pass" : "FAIL") << '\n';
    }
    return 0;
}

int cmd_congruence(const RunConfig& cfg) {
    require_desk_scale(cfg);
    std::cout << "p,t,rep,size,rule,modulus,pass\n";
    bool any_fail = false;
    if (cfg.all_t) {
        for (std::int64_t t = 0; t < cfg.p; ++t) {
            if (t == 2) continue;
            run_congruence_for_t(cfg, t, any_fail, std::cout);
        }
    } else {
        run_congruence_for_t(cfg, cfg.t, any_fail, std::cout);
    }
    return any_fail ? 2 : 0;
}

int cmd_nielsen(const RunConfig& cfg) {
    auto G = markoff::groups::load_group_spec(cfg.group_file);
    auto report = markoff::nielsen::out_plus_orbits(G);
    json j;
    j["tool_version"] = kToolVersion;
    j["group_file"] = cfg.group_file;
    j["group_order"] = G.size();
    j["total_classes"] = report.total_classes;
    json strata = json::array();
    bool all_pass = true;
    for (const auto& st : report.strata) {
        if (cfg.higman_order > 0 && st.higman_order != std::uint64_t(cfg.higman_order)) continue;
        json orbits = json::array();
        for (const auto& orb : st.orbits)
            orbits.push_back({{"size", orb.size},
                              {"quotient_size", orb.quotient_size},
                              {"gamma_minus_i_free", orb.gamma_minus_i_free}});
        strata.push_back({{"higman_class", st.higman_class},
                          {"higman_order", st.higman_order},
                          {"m_prime", st.m_prime},
                          {"d_prime", st.d_prime},
                          {"modulus", st.modulus},
                          {"congruence_pass", st.congruence_pass},
                          {"orbits", orbits}});
        if (!st.congruence_pass) all_pass = false;
    }
    j["strata"] = strata;
    j["all_pass"] = all_pass;
    std::cout << j.dump(2) << "\n";
    return all_pass ? 0 : 2;
}

int cmd_delta(const RunConfig& cfg) {
    auto G = markoff::groups::load_group_spec(cfg.group_file);
    auto classes = markoff::cusp_comb::delta_classes(G);
    json j;
    j["tool_version"] = kToolVersion;
    j["group_file"] = cfg.group_file;
    j["group_order"] = G.size();
    json arr = json::array();
    for (const auto& dc : classes)
        arr.push_back({{"u", dc.u}, {"h", dc.h}, {"higman_class", dc.higman_class}, {"width", dc.width}});
    j["delta_classes"] = arr;
    j["count"] = classes.size();
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_tree(const RunConfig& cfg) {
    auto tag = cfg.restrict_to == "x" ? markoff::markoff_z::SurfaceTag::X
                                      : markoff::markoff_z::SurfaceTag::M;
    auto tree = markoff::markoff_z::grow_tree(markoff::arith::BigInt(cfg.bound), tag);
    json j;
    j["tool_version"] = kToolVersion;
    j["surface"] = (tag == markoff::markoff_z::SurfaceTag::M) ? "M" : "X";
    j["bound"] = cfg.bound;
    json arr = json::array();
    for (const auto& t : tree) arr.push_back({t.x.str(), t.y.str(), t.z.str()});
    j["triples"] = arr;
    j["count"] = tree.size();
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_strong_approx(const RunConfig& cfg) {
    std::uint64_t n = cfg.n;
    std::vector<std::uint32_t> primes;
    for (auto [q, e] : markoff::arith::factorize(n)) {
        if (e > 1) {
            std::cerr << "strong-approx: modulus must be squarefree\n";
            return 1;
        }
        primes.push_back(static_cast<std::uint32_t>(q));
    }
    bool pass = markoff::markoff_z::strong_approx(primes);
    json j;
    j["tool_version"] = kToolVersion;
    j["n"] = n;
    j["primes"] = primes;
    j["pass"] = pass;
    std::cout << j.dump(2) << "\n";
    return pass ? 0 : 2;
}

int cmd_frobenius(const RunConfig& cfg) {
    auto rep = markoff::markoff_z::frobenius_residues(static_cast<std::uint32_t>(cfg.p),
                                                      markoff::arith::BigInt(cfg.bound));
    json j;
    j["tool_version"] = kToolVersion;
    j["p"] = rep.p;
    j["bound"] = cfg.bound;
    j["forbidden_residues"] = rep.forbidden;
    j["markoff_numbers"] = rep.numbers_seen;
    j["histogram"] = rep.histogram;
    j["pass"] = rep.ok;
    std::cout << j.dump(2) << "\n";
    return rep.ok ? 0 : 2;
}

int cmd_crosscheck(const RunConfig& cfg) {
    auto sl2 = markoff::nielsen::sl2_crosscheck(static_cast<std::uint32_t>(cfg.p));
    auto cusp = markoff::cusp_comb::cusp_crosscheck(static_cast<std::uint32_t>(cfg.p));
    json j = report_header(cfg, "GammaInf/Rot1");
    j["sl2_crosscheck"] = {{"star_points", sl2.star_points},
                           {"gl2_classes", sl2.gl2_classes},
                           {"bijection_ok", sl2.bijection_ok},
                           {"intertwine_ok", sl2.intertwine_ok},
                           {"orbit_multisets_ok", sl2.orbit_multisets_ok},
                           {"lift_surjective", sl2.lift_surjective},
                           {"pass", sl2.ok()}};
    j["cusp_crosscheck"] = {{"group_side", cusp.group_side},
                            {"surface_side", cusp.surface_side},
                            {"pass", cusp.ok()}};
    bool pass = sl2.ok() && cusp.ok();
    j["pass"] = pass;
    std::cout << j.dump(2) << "\n";
    return pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Markoff surfaces mod p and Nielsen class combinatorics"};
    app.require_subcommand(1);
    RunConfig cfg;

    app.add_option("--cache", cfg.cache_dir, "cache directory (MARKOFF_CACHE_DIR overrides)");
    app.add_option("--threads", cfg.threads, "worker threads");
    app.add_option("--format", cfg.format, "json|table (congruence emits csv)");
    app.add_option("--p-max", cfg.p_max, "safety cap on p");

    auto add_p = [&](CLI::App* sub) {
        return sub->add_option("--p", cfg.p, "prime p")->required();
    };

    auto* orbits = app.add_subcommand("orbits", "orbit decomposition of X_t(p)");
    orbits->fallthrough();

    add_p(orbits);
    orbits->add_option("--t", cfg.t, "trace invariant (default -2)");
    orbits->add_option("--restrict", cfg.restrict_to, "star|all");
    orbits->add_option("--gens", cfg.gens, "default|gamma|rot1");

    auto* genus = app.add_subcommand("genus", "genus of M_p two ways");
    genus->fallthrough();

    add_p(genus);

    auto* cusps = app.add_subcommand("cusps", "cusp records of a finite group");
    cusps->fallthrough();

    cusps->add_option("--group", cfg.group_file, "group spec file")->required();

    auto* congruence = app.add_subcommand("congruence", "orbit divisibility verdicts");
    congruence->fallthrough();

    add_p(congruence);
    congruence->add_option("--t", cfg.t, "trace invariant");
    congruence->add_flag("--all-t", cfg.all_t, "verify every t != 2");
    congruence->add_option("--ell", cfg.ell, "restrict the ladic rows to this odd prime");

    auto* nielsen = app.add_subcommand("nielsen", "Out+ orbit report for a finite group");
    nielsen->fallthrough();

    nielsen->add_option("--group", cfg.group_file, "group spec file")->required();
    nielsen->add_option("--higman-order", cfg.higman_order, "restrict to Higman classes of this order");

    auto* delta = app.add_subcommand("delta", "delta classes of a finite group");
    delta->fallthrough();

    delta->add_option("--group", cfg.group_file, "group spec file")->required();

    auto* tree = app.add_subcommand("tree", "integral solutions up to a bound");
    tree->fallthrough();

    tree->add_option("--bound", cfg.bound, "largest coordinate")->required();
    tree->add_option("--surface", cfg.restrict_to, "m|x");

    auto* sa = app.add_subcommand("strong-approx", "surjectivity onto the mod-n points");
    sa->fallthrough();

    sa->add_option("--n", cfg.n, "squarefree modulus")->required();

    auto* frob = app.add_subcommand("frobenius", "forbidden residue check");
    frob->fallthrough();

    add_p(frob);
    frob->add_option("--bound", cfg.bound, "Markoff number bound");

    auto* cross = app.add_subcommand("crosscheck", "group side vs surface side");
    cross->fallthrough();

    add_p(cross);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // --help exits cleanly; anything else is usage
    }

    try {
        if (orbits->parsed()) return cmd_orbits(cfg);
        if (genus->parsed()) return cmd_genus(cfg);
        if (cusps->parsed()) return cmd_cusps(cfg);
        if (congruence->parsed()) return cmd_congruence(cfg);
        if (nielsen->parsed()) return cmd_nielsen(cfg);
        if (delta->parsed()) return cmd_delta(cfg);
        if (tree->parsed()) return cmd_tree(cfg);
        if (sa->parsed()) return cmd_strong_approx(cfg);
        if (frob->parsed()) return cmd_frobenius(cfg);
        if (cross->parsed()) return cmd_crosscheck(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        // Runtime failures here mean a computed quantity contradicted an
        // expected invariant; that is reportable, not a usage problem.
        std::cerr << "FALSIFIED: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
