#include "stratum/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "stratum/corpus.hpp"
#include "stratum/ihom.hpp"
#include "stratum/strat_format.hpp"
#include "stratum/symcalc.hpp"
#include "stratum/verify.hpp"

namespace stratum {

namespace {

struct NamedInput {
    std::string name;
    Stratification strat;
    std::map<std::string, Perversity> file_perversities;
    const CorpusEntry* entry = nullptr; // when corpus-backed
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("UsageError", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// <name>[:stratification-key]; STRATUM_CORPUS_DIR/<name>.strat overrides
NamedInput resolve_input(const std::string& spec) {
    NamedInput out;
    std::string name = spec, key;
    auto colon = spec.find(':');
    if (colon != std::string::npos) {
        name = spec.substr(0, colon);
        key = spec.substr(colon + 1);
    }
    out.name = spec;
    if (name.size() > 6 && name.substr(name.size() - 6) == ".strat") {
        StratFile f = parse_strat_file(read_file(name));
        out.strat = f.strat;
        out.file_perversities = f.perversities;
        return out;
    }
    if (const char* dir = std::getenv("STRATUM_CORPUS_DIR")) {
        std::string path = std::string(dir) + "/" + name + ".strat";
        std::ifstream probe(path);
        if (probe) {
            StratFile f = parse_strat_file(read_file(path));
            out.strat = f.strat;
            out.file_perversities = f.perversities;
            return out;
        }
    }
    const CorpusEntry& e = corpus_entry(name);
    if (e.symbolic_only) fail("UsageError", name + " is symbolic-only; use the calc command");
    out.entry = &e;
    if (key.empty()) key = e.stratifications.count("default") ? "default" : "S";
    out.strat = e.strat(key);
    return out;
}

Perversity resolve_perversity(const NamedInput& in, const std::string& spec) {
    const Stratification& st = in.strat;
    if (spec.empty() || spec == "zero") return zero_perversity(st);
    if (spec == "top") return top_perversity(st);
    if (spec.rfind("codim:", 0) == 0) {
        std::vector<long long> vals = {0};
        std::string rest = spec.substr(6);
        std::istringstream ss(rest);
        std::string tok;
        while (std::getline(ss, tok, ',')) vals.push_back(std::stoll(tok));
        return from_codim_fn(st, codim_fn_from_list(vals));
    }
    if (spec.find('=') != std::string::npos) {
        // inline assignments id=value,id=value
        std::vector<std::pair<std::string, ExtInt>> named;
        std::istringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) fail("UsageError", "bad perversity assignment: " + tok);
            named.push_back({tok.substr(0, eq), ExtInt::parse(tok.substr(eq + 1))});
        }
        return make_perversity(st, named);
    }
    auto it = in.file_perversities.find(spec);
    if (it != in.file_perversities.end()) return it->second;
    fail("UsageError", "unknown perversity spec: " + spec);
}

std::pair<Stratification, Stratification> resolve_pair(const NamedInput& in,
                                                       const std::string& pair_spec) {
    if (!in.entry) fail("UsageError", "coarsening commands need a corpus entry");
    const CorpusEntry& e = *in.entry;
    std::string fine, coarse;
    if (pair_spec.empty()) {
        if (e.coarsening_pairs.empty()) fail("UsageError", e.name + " has no coarsening pairs");
        fine = e.coarsening_pairs[0].first;
        coarse = e.coarsening_pairs[0].second;
    } else {
        auto comma = pair_spec.find(',');
        if (comma == std::string::npos) fail("UsageError", "--pair needs fine,coarse");
        fine = pair_spec.substr(0, comma);
        coarse = pair_spec.substr(comma + 1);
    }
    return {e.strat(fine), e.strat(coarse)};
}

void header(std::ostream& out, const std::vector<std::string>& args, const std::string& input_name,
            const Stratification& strat) {
    out << "command:";
    for (const auto& a : args) out << " " << a;
    out << "\n";
    out << "input: " << input_name << " digest=" << content_digest(emit_strat_file(strat)) << "\n";
}

std::string stratum_summary(const Stratification& st) {
    std::ostringstream out;
    out << "formal dim " << st.formal_dim() << ", strata " << st.strata().size() << ", depth "
        << st.depth() << "\n";
    for (const auto& s : st.strata())
        out << "  " << s.id << ": dim " << s.formal_dim << " codim " << s.codim
            << (s.regular ? " regular" : " singular") << ", carriers "
            << s.carrier_simplices.size() << "\n";
    return out.str();
}

SymSpacePtr parse_sym_expr(Calculator& calc, const std::string& text);

SymSpacePtr parse_sym_inner(Calculator& calc, const std::string& text) {
    auto strip = [](std::string s) {
        while (!s.empty() && s.front() == ' ') s.erase(s.begin());
        while (!s.empty() && s.back() == ' ') s.pop_back();
        return s;
    };
    std::string t = strip(text);
    auto call = [&](const std::string& head) -> std::optional<std::string> {
        if (t.rfind(head + "(", 0) == 0 && t.back() == ')')
            return t.substr(head.size() + 1, t.size() - head.size() - 2);
        return std::nullopt;
    };
    if (auto inner = call("cone")) return cone_space(parse_sym_expr(calc, *inner));
    if (auto inner = call("join")) {
        auto comma = inner->find(',');
        if (comma == std::string::npos) fail("UsageError", "join(m,expr) needs two arguments");
        return join_sphere_space(std::stoi(inner->substr(0, comma)),
                                 parse_sym_expr(calc, inner->substr(comma + 1)));
    }
    if (auto inner = call("prod")) {
        auto comma = inner->find(',');
        if (comma == std::string::npos) fail("UsageError", "prod(a,expr) needs two arguments");
        return prod_euclid_space(std::stoi(inner->substr(0, comma)),
                                 parse_sym_expr(calc, inner->substr(comma + 1)));
    }
    if (t == "example83") return example83_fine(calc);
    if (t == "example83_coarse") return example83_coarse(calc);
    return calc.atom(t);
}

SymSpacePtr parse_sym_expr(Calculator& calc, const std::string& text) {
    return parse_sym_inner(calc, text);
}

int command_verify(const std::string& which, unsigned seed, std::ostream& out) {
    std::vector<std::string> names =
        (which == "all") ? suite_names() : std::vector<std::string>{which};
    bool all_pass = true;
    // the corpus oracle gate runs before the property suites
    if (which == "all") {
        auto it = std::find(names.begin(), names.end(), std::string("corpus-oracles"));
        if (it != names.end()) std::rotate(names.begin(), names.begin() + (it - names.begin()),
                                           names.begin() + (it - names.begin()) + 1);
    }
    for (const auto& n : names) {
        SuiteResult r = run_suite(n, seed);
        out << r.to_text();
        if (!r.passed) all_pass = false;
        if (n == "corpus-oracles" && !r.passed && which == "all") {
            out << "corpus oracle gate failed; skipping the remaining suites\n";
            return 1;
        }
    }
    return all_pass ? 0 : 1;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"stratified-complex verification toolkit"};
    app.require_subcommand(1);

    std::string input, perv_spec, ring_spec = "Z", pair_spec, format = "text";
    unsigned seed = 20250808;
    app.add_option("--format", format)->check(CLI::IsMember({"text"}));

    auto* c_list = app.add_subcommand("corpus-list", "list corpus entries");
    auto* c_emit = app.add_subcommand("emit", "emit a stratification in .strat form");
    c_emit->add_option("name", input)->required();
    auto* c_strata = app.add_subcommand("strata", "strata, poset and CS diagnostics");
    c_strata->add_option("name", input)->required();
    auto* c_classify = app.add_subcommand("classify", "coarsening classification and S_e");
    c_classify->add_option("name", input)->required();
    c_classify->add_option("--pair", pair_spec);
    auto* c_perv = app.add_subcommand("perv-check", "growing/GM/K checks");
    c_perv->add_option("name", input)->required();
    c_perv->add_option("--perversity", perv_spec);
    c_perv->add_option("--pair", pair_spec);
    auto* c_push = app.add_subcommand("push", "pushforward along a coarsening");
    c_push->add_option("name", input)->required();
    c_push->add_option("--perversity", perv_spec);
    c_push->add_option("--pair", pair_spec);
    auto* c_pull = app.add_subcommand("pull", "pullback along a coarsening");
    c_pull->add_option("name", input)->required();
    c_pull->add_option("--perversity", perv_spec);
    c_pull->add_option("--pair", pair_spec);
    auto* c_ih = app.add_subcommand("ih", "intersection homology");
    c_ih->add_option("name", input)->required();
    c_ih->add_option("--perversity", perv_spec);
    c_ih->add_option("--ring", ring_spec);
    auto* c_pi0 = app.add_subcommand("pi0", "components of the regular part");
    c_pi0->add_option("name", input)->required();
    c_pi0->add_option("--perversity", perv_spec);
    auto* c_pi1 = app.add_subcommand("pi1-regular", "edge-path group of the regular spine");
    c_pi1->add_option("name", input)->required();
    std::string apex_spec = "0", disk_spec = "0", corner_spec = "0";
    int join_m = 1;
    auto* c_cone = app.add_subcommand("cone-probe", "cone threshold probe");
    c_cone->add_option("name", input)->required();
    c_cone->add_option("--apex", apex_spec);
    c_cone->add_option("--perversity", perv_spec);
    c_cone->add_option("--ring", ring_spec);
    auto* c_two = app.add_subcommand("two-cone-probe", "two-cone threshold probe");
    c_two->add_option("name", input)->required();
    c_two->add_option("--m", join_m);
    c_two->add_option("--corner", corner_spec);
    c_two->add_option("--disk", disk_spec);
    c_two->add_option("--perversity", perv_spec);
    c_two->add_option("--ring", ring_spec);
    std::string star_u, star_v;
    auto* c_mv = app.add_subcommand("mv-check", "Mayer-Vietoris exactness over Q");
    c_mv->add_option("name", input)->required();
    c_mv->add_option("--star-u", star_u)->required();
    c_mv->add_option("--star-v", star_v)->required();
    c_mv->add_option("--perversity", perv_spec);
    std::string calc_expr;
    int calc_ell = 1;
    auto* c_calc = app.add_subcommand("calc", "symbolic intersection-homotopy calculator");
    c_calc->add_option("expr", calc_expr)->required();
    c_calc->add_option("--l", calc_ell);
    c_calc->add_option("--perversity", perv_spec);
    std::string suite;
    auto* c_verify = app.add_subcommand("verify", "run a verification suite");
    c_verify->add_option("suite", suite)->required();
    c_verify->add_option("--seed", seed);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    if (c_list->parsed()) {
        out << "command: corpus-list\n";
        for (const auto& name : corpus_names()) {
            const auto& e = corpus_entry(name);
            out << name << ": " << e.description;
            if (e.symbolic_only) out << " [symbolic]";
            out << "\n";
        }
        return 0;
    }
    if (c_emit->parsed()) {
        NamedInput in = resolve_input(input);
        out << emit_strat_file(in.strat);
        return 0;
    }
    if (c_strata->parsed()) {
        NamedInput in = resolve_input(input);
        header(out, args, in.name, in.strat);
        out << stratum_summary(in.strat);
        CsDiagnostics d = cs_diagnostics(in.strat);
        out << d.to_text();
        return d.cs_candidate() ? 0 : 1;
    }
    if (c_classify->parsed()) {
        // symbolic-only entries classify through the calculator
        if (input == "example83") {
            out << "command: classify example83 (symbolic)\n";
            Calculator calc;
            auto fine = example83_fine(calc);
            auto coarse = example83_coarse(calc);
            SymPerv p = example83_perversity();
            auto h = calc.coarsen_hypotheses(coarse, p);
            for (const auto& id : h.exceptional) {
                const SymStratum* s = fine->find(id);
                out << "  " << id << " -> <regular>: Exceptional (dim "
                    << s->formal_dim << ")\n";
            }
            out << "K-perversity (Dp = 1-bar): " << (h.k_perversity ? "yes" : "no") << "\n";
            for (const auto& [id, status] : h.link_status)
                out << "  link of " << id << ": pi1(cone) " << status << "\n";
            out << "Theorem A applies: " << (h.theorem_A ? "yes" : "no") << "\n";
            out << "Theorem B applies: " << (h.theorem_B ? "yes" : "no") << "\n";
            return 0;
        }
        NamedInput in = resolve_input(input);
        auto [fine, coarse] = resolve_pair(in, pair_spec);
        header(out, args, in.name, fine);
        Coarsening c = build_coarsening(fine, coarse);
        for (size_t i = 0; i < c.fine.strata().size(); ++i)
            out << "  " << c.fine.strata()[i].id << " -> "
                << c.coarse.strata()[c.stratum_map[i]].id << ": "
                << to_string(c.classification[i]) << "\n";
        int depth = exceptional_fountain_depth(c);
        out << "exceptional/fountain subposet depth " << depth << ", simple: "
            << (is_simple(c) ? "yes" : "no");
        bool any_v = false;
        for (auto cls : c.classification)
            if (cls != StratumClass::Source && cls != StratumClass::RegularSource) any_v = true;
        if (!any_v) out << " (empty subposet, depth read as <= 1)";
        out << "\n";
        SeDecomposition se = build_Se(c);
        out << "S_e strata: " << se.se.strata().size() << "; iota_e identity: "
            << (se.iota_e.is_identity() ? "yes" : "no") << "; iota_sigma exceptional-free: "
            << (se.iota_sigma.has_exceptional() ? "no" : "yes") << "\n";
        auto chain = simple_chain(c);
        out << "simple chain length " << chain.size() << "\n";
        return 0;
    }
    if (c_perv->parsed()) {
        NamedInput in = resolve_input(input);
        header(out, args, in.name, in.strat);
        Perversity p = resolve_perversity(in, perv_spec);
        out << "perversity: " << perversity_to_string(in.strat, p) << "\n";
        out << "p <= t-bar: " << (leq_top(in.strat, p) ? "yes" : "no") << "\n";
        if (perv_spec.rfind("codim:", 0) == 0) {
            std::vector<long long> vals = {0};
            std::istringstream ss(perv_spec.substr(6));
            std::string tok;
            while (std::getline(ss, tok, ',')) vals.push_back(std::stoll(tok));
            CodimPerversityFn f = codim_fn_from_list(vals);
            out << "growing property: "
                << (growing_check(f, in.strat.formal_dim()) ? "yes" : "no") << "\n";
            out << "GM perversity: " << (is_GM(f, in.strat.formal_dim()) ? "yes" : "no") << "\n";
        }
        int rc = 0;
        if (in.entry && !in.entry->coarsening_pairs.empty()) {
            auto [fine, coarse] = resolve_pair(in, pair_spec);
            auto map = is_stratified_coarsening(fine, coarse);
            if (map) {
                KCheck k = is_K_perversity(fine, coarse, *map, p);
                out << "K-perversity: " << (k.ok ? "yes" : "no") << "\n";
                if (!k.ok) {
                    out << "certificate: " << k.certificate << "\n";
                    rc = 1;
                }
            }
        }
        return rc;
    }
    if (c_push->parsed() || c_pull->parsed()) {
        NamedInput in = resolve_input(input);
        auto [fine, coarse] = resolve_pair(in, pair_spec);
        header(out, args, in.name, fine);
        auto map = *is_stratified_coarsening(fine, coarse);
        if (c_push->parsed()) {
            NamedInput fine_in = in;
            fine_in.strat = fine;
            Perversity p = resolve_perversity(fine_in, perv_spec);
            PushforwardResult res = pushforward(fine, coarse, map, p);
            out << "pushforward: " << perversity_to_string(coarse, res.perversity) << "\n";
            for (const auto& note : res.infimum_notes) out << "note: " << note << "\n";
        } else {
            NamedInput coarse_in = in;
            coarse_in.strat = coarse;
            Perversity q = resolve_perversity(coarse_in, perv_spec);
            Perversity p = pullback(fine, coarse, map, q);
            out << "pullback: " << perversity_to_string(fine, p) << "\n";
        }
        return 0;
    }
    if (c_ih->parsed()) {
        NamedInput in = resolve_input(input);
        header(out, args, in.name, in.strat);
        Perversity p = resolve_perversity(in, perv_spec);
        RingSpec ring = RingSpec::parse(ring_spec);
        HomologyResult h = intersection_homology(in.strat, p, ring);
        for (int k = 0; k <= h.top_degree(); ++k) out << h.line(k, "IH") << "\n";
        return 0;
    }
    if (c_pi0->parsed()) {
        NamedInput in = resolve_input(input);
        header(out, args, in.name, in.strat);
        Perversity p = resolve_perversity(in, perv_spec);
        Pi0Result r = pi0_p(in.strat, p);
        out << "pi0^p components: " << r.count << "\n";
        return 0;
    }
    if (c_pi1->parsed()) {
        NamedInput in = resolve_input(input);
        header(out, args, in.name, in.strat);
        Pi1Result r = pi1_regular(in.strat);
        out << "spine components: " << r.components.size() << "\n";
        for (size_t i = 0; i < r.components.size(); ++i) {
            const auto& g = r.components[i];
            out << "component " << i << ": generators " << g.generators << ", relators "
                << g.relators.size() << ", abelianization rank " << g.abelian_rank << " torsion [";
            for (size_t j = 0; j < g.abelian_torsion.size(); ++j)
                out << (j ? "," : "") << g.abelian_torsion[j];
            out << "], tietze-trivial: " << (g.tietze_trivial ? "yes" : "no") << "\n";
        }
        return 0;
    }
    if (c_cone->parsed()) {
        NamedInput in = resolve_input(input);
        header(out, args, in.name, in.strat);
        Perversity p = resolve_perversity(in, perv_spec);
        ConeProbeReport rep = cone_threshold_probe(in.strat, p, ExtInt::parse(apex_spec),
                                                   RingSpec::parse(ring_spec));
        out << rep.detail;
        out << "matches calibrated threshold: " << (rep.matches ? "yes" : "no") << "\n";
        return rep.matches ? 0 : 1;
    }
    if (c_two->parsed()) {
        NamedInput in = resolve_input(input);
        header(out, args, in.name, in.strat);
        Perversity p = resolve_perversity(in, perv_spec);
        TwoConeProbeReport rep =
            two_cone_probe(join_m, in.strat, p, ExtInt::parse(corner_spec),
                           ExtInt::parse(disk_spec), RingSpec::parse(ring_spec));
        out << rep.detail << "\n";
        if (!rep.k_perversity || !rep.bounds_ok) {
            out << "rejected: " << rep.certificate << "\n";
            return 1;
        }
        out << "matches threshold: " << (rep.matches ? "yes" : "no") << "\n";
        return rep.matches ? 0 : 1;
    }
    if (c_mv->parsed()) {
        NamedInput in = resolve_input(input);
        header(out, args, in.name, in.strat);
        Perversity p = resolve_perversity(in, perv_spec);
        const SimplicialComplex& x = in.strat.complex();
        auto star_of = [&](const std::string& v) {
            std::vector<std::vector<std::string>> fs;
            int vid = x.vertex_by_label(v);
            if (vid < 0) fail("UsageError", "no vertex " + v);
            for (const auto& f : x.facets())
                if (f.contains(vid)) fs.push_back(x.labels_of(f));
            return fs;
        };
        MvReport rep = mv_exactness_check(in.strat, p, star_of(star_u), star_of(star_v));
        out << rep.table;
        out << "exact: " << (rep.exact ? "yes" : "no") << "\n";
        return rep.exact ? 0 : 1;
    }
    if (c_calc->parsed()) {
        out << "command: calc " << calc_expr << " l=" << calc_ell << "\n";
        if (calc_expr == "atoms") {
            out << builtin_atom_declarations();
            return 0;
        }
        // external atoms.decl overrides the builtin declarations
        Calculator calc(false);
        bool loaded = false;
        if (const char* dir = std::getenv("STRATUM_CORPUS_DIR")) {
            std::string path = std::string(dir) + "/atoms.decl";
            std::ifstream probe(path);
            if (probe) {
                calc.load_atoms(read_file(path));
                loaded = true;
                out << "atoms: " << path << "\n";
            }
        }
        if (!loaded) calc.load_atoms(builtin_atom_declarations());
        SymSpacePtr space = parse_sym_expr(calc, calc_expr);
        SymPerv p;
        if (!perv_spec.empty()) {
            std::istringstream ss(perv_spec);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                auto eq = tok.find('=');
                if (eq == std::string::npos) fail("UsageError", "bad perversity: " + tok);
                p[tok.substr(0, eq)] = ExtInt::parse(tok.substr(eq + 1));
            }
        }
        Fact f = calc.request(space, p, calc_ell);
        out << f.line() << "\n";
        out << "fact base:\n" << calc.dump();
        ConsistencyReport cr = calc.consistency_check();
        out << cr.to_text();
        return cr.consistent ? 0 : 1;
    }
    if (c_verify->parsed()) {
        out << "command: verify " << suite << " seed=" << seed << "\n";
        auto t0 = std::chrono::steady_clock::now();
        int rc = command_verify(suite, seed, out);
        auto t1 = std::chrono::steady_clock::now();
        err << "elapsed "
            << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() << "ms\n";
        return rc;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const Error& e) {
        std::string code = e.code();
        err << "error: " << e.what() << "\n";
        if (code == "UsageError" || code == "ParseError") return 2;
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace stratum
