#include "stratum/symcalc.hpp"

#include <algorithm>
#include <sstream>

namespace stratum {

// ---------------------------------------------------------------------------
// SymGroup

SymGroup SymGroup::free_abelian(int n) {
    if (n <= 0) return trivial();
    return {Kind::FreeAbelian, n, "", {}};
}

SymGroup SymGroup::product(std::vector<SymGroup> fs) {
    SymGroup g;
    g.kind = Kind::Product;
    g.factors = std::move(fs);
    return g.canonical();
}

SymGroup SymGroup::canonical() const {
    if (kind != Kind::Product) return *this;
    std::vector<SymGroup> flat;
    int free_rank = 0;
    bool any_unknown = false;
    std::string unknown_reason;
    std::vector<SymGroup> stack(factors.rbegin(), factors.rend());
    while (!stack.empty()) {
        SymGroup f = stack.back().canonical();
        stack.pop_back();
        switch (f.kind) {
            case Kind::Trivial: break;
            case Kind::FreeAbelian: free_rank += f.rank; break;
            case Kind::Product:
                for (auto it = f.factors.rbegin(); it != f.factors.rend(); ++it)
                    stack.push_back(*it);
                break;
            case Kind::Unknown:
                any_unknown = true;
                unknown_reason = f.label;
                break;
            case Kind::Named: flat.push_back(f); break;
        }
    }
    if (any_unknown) return unknown(unknown_reason);
    if (free_rank > 0) flat.push_back(free_abelian(free_rank));
    if (flat.empty()) return trivial();
    if (flat.size() == 1) return flat[0];
    std::sort(flat.begin(), flat.end(),
              [](const SymGroup& a, const SymGroup& b) { return a.to_string() < b.to_string(); });
    SymGroup g;
    g.kind = Kind::Product;
    g.factors = std::move(flat);
    return g;
}

bool SymGroup::same_as(const SymGroup& o) const {
    return canonical().to_string() == o.canonical().to_string();
}

std::string SymGroup::to_string() const {
    switch (kind) {
        case Kind::Trivial: return "1";
        case Kind::FreeAbelian: return rank == 1 ? "Z" : "Z^" + std::to_string(rank);
        case Kind::Named: return label;
        case Kind::Unknown: return "Unknown(" + label + ")";
        case Kind::Product: {
            std::string out;
            for (size_t i = 0; i < factors.size(); ++i) {
                if (i) out += " x ";
                out += factors[i].to_string();
            }
            return out;
        }
    }
    return "?";
}

SymGroup SymGroup::parse(const std::string& text) {
    if (text == "1" || text == "0" || text == "trivial") return trivial();
    if (text == "Z") return free_abelian(1);
    if (text.rfind("Z^", 0) == 0) return free_abelian(std::stoi(text.substr(2)));
    if (text.rfind("unknown", 0) == 0) return unknown("declared unknown");
    return named(text);
}

std::optional<std::pair<int, bool>> SymGroup::abelian_rank() const {
    SymGroup c = canonical();
    switch (c.kind) {
        case Kind::Trivial: return std::make_pair(0, true);
        case Kind::FreeAbelian: return std::make_pair(c.rank, true);
        case Kind::Named:
            if (c.label == "binary-icosahedral") return std::make_pair(0, true); // perfect group
            return std::nullopt;
        case Kind::Product: {
            int total = 0;
            for (const auto& f : c.factors) {
                auto r = f.abelian_rank();
                if (!r) return std::nullopt;
                total += r->first;
            }
            return std::make_pair(total, true);
        }
        case Kind::Unknown: return std::nullopt;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// SymSpace constructors

const SymStratum* SymSpace::find(const std::string& id) const {
    for (const auto& s : singular)
        if (s.id == id) return &s;
    return nullptr;
}

std::string SymSpace::to_string() const {
    switch (kind) {
        case Kind::Atom: return atom_name;
        case Kind::Cone: return "cone(" + base->to_string() + ")";
        case Kind::JoinSphere:
            return "join(S" + std::to_string(param) + "," + base->to_string() + ")";
        case Kind::ProdEuclid:
            return "prod(R" + std::to_string(param) + "," + base->to_string() + ")";
        case Kind::Coarsen: {
            std::string spec;
            for (const auto& [target, members] : merge) {
                spec += target + "<-{";
                for (size_t i = 0; i < members.size(); ++i)
                    spec += (i ? "," : "") + members[i];
                spec += "}";
            }
            if (spec.empty()) spec = "all-regular";
            return "coarsen(" + base->to_string() + ";" + spec + ")";
        }
    }
    return "?";
}

namespace {

void sort_strata(SymSpace& s) {
    std::sort(s.singular.begin(), s.singular.end(),
              [](const SymStratum& a, const SymStratum& b) { return a.id < b.id; });
}

} // namespace

SymSpacePtr cone_space(SymSpacePtr base) {
    auto s = std::make_shared<SymSpace>();
    s->kind = SymSpace::Kind::Cone;
    s->base = base;
    s->formal_dim = base->formal_dim + 1;
    s->connected = true;
    s->normal = base->normal && base->connected;
    s->pre_thom_mather = base->pre_thom_mather;
    s->regular_components = base->regular_components;
    SymStratum apex;
    apex.id = "v";
    apex.formal_dim = 0;
    apex.link = base;
    for (const auto& bs : base->singular) apex.link_map.push_back({bs.id, "c_" + bs.id});
    s->singular.push_back(apex);
    for (const auto& bs : base->singular) {
        SymStratum t;
        t.id = "c_" + bs.id;
        t.formal_dim = bs.formal_dim + 1;
        t.link = bs.link;
        for (const auto& [l, amb] : bs.link_map) t.link_map.push_back({l, "c_" + amb});
        s->singular.push_back(t);
        s->below.push_back({"v", t.id});
    }
    for (const auto& [a, b] : base->below) s->below.push_back({"c_" + a, "c_" + b});
    sort_strata(*s);
    return s;
}

SymSpacePtr join_sphere_space(int m, SymSpacePtr base) {
    if (m < 0) fail("UsageError", "negative sphere dimension in join");
    auto s = std::make_shared<SymSpace>();
    s->kind = SymSpace::Kind::JoinSphere;
    s->base = base;
    s->param = m;
    s->formal_dim = m + 1 + base->formal_dim;
    s->connected = true;
    s->normal = base->normal && base->connected;
    s->pre_thom_mather = base->pre_thom_mather;
    s->regular_components = base->regular_components;
    std::vector<std::string> bottoms = (m == 0) ? std::vector<std::string>{"sph0", "sph1"}
                                                : std::vector<std::string>{"sph0"};
    for (const auto& id : bottoms) {
        SymStratum b;
        b.id = id;
        b.formal_dim = m;
        b.link = base;
        for (const auto& bs : base->singular) b.link_map.push_back({bs.id, "j_" + bs.id});
        s->singular.push_back(b);
    }
    for (const auto& bs : base->singular) {
        SymStratum t;
        t.id = "j_" + bs.id;
        t.formal_dim = m + 1 + bs.formal_dim;
        t.link = bs.link;
        for (const auto& [l, amb] : bs.link_map) t.link_map.push_back({l, "j_" + amb});
        s->singular.push_back(t);
        for (const auto& id : bottoms) s->below.push_back({id, t.id});
    }
    for (const auto& [a, b] : base->below) s->below.push_back({"j_" + a, "j_" + b});
    sort_strata(*s);
    return s;
}

SymSpacePtr prod_euclid_space(int a, SymSpacePtr base) {
    if (a < 0) fail("UsageError", "negative euclidean factor");
    auto out = std::make_shared<SymSpace>(*base);
    out->kind = SymSpace::Kind::ProdEuclid;
    out->base = base;
    out->param = a;
    out->atom_name.clear();
    out->merge.clear();
    out->formal_dim = base->formal_dim + a;
    for (auto& st : out->singular) st.formal_dim += a;
    return out;
}

SymSpacePtr coarsen_space(SymSpacePtr base,
                          std::vector<std::pair<std::string, std::vector<std::string>>> merge) {
    auto s = std::make_shared<SymSpace>();
    s->kind = SymSpace::Kind::Coarsen;
    s->base = base;
    s->merge = merge;
    s->formal_dim = base->formal_dim;
    s->connected = base->connected;
    s->normal = false;        // not derivable symbolically
    s->pre_thom_mather = false;
    std::map<std::string, std::string> target_of;
    for (const auto& [target, members] : merge) {
        if (members.empty()) fail("UsageError", "empty merge group " + target);
        int dim = -1;
        for (const auto& mid : members) {
            const SymStratum* bs = base->find(mid);
            if (!bs) fail("UsageError", "merge member " + mid + " is not a stratum");
            if (target_of.count(mid)) fail("UsageError", "stratum merged twice: " + mid);
            target_of[mid] = target;
            dim = std::max(dim, bs->formal_dim);
        }
        SymStratum t;
        t.id = target;
        t.formal_dim = dim;
        s->singular.push_back(t);
    }
    bool absorbed = false;
    for (const auto& bs : base->singular)
        if (!target_of.count(bs.id)) absorbed = true;
    s->regular_components = absorbed ? -1 : base->regular_components;
    for (const auto& [a, b] : base->below) {
        auto ia = target_of.find(a), ib = target_of.find(b);
        if (ia != target_of.end() && ib != target_of.end() && ia->second != ib->second)
            s->below.push_back({ia->second, ib->second});
    }
    std::sort(s->below.begin(), s->below.end());
    s->below.erase(std::unique(s->below.begin(), s->below.end()), s->below.end());
    sort_strata(*s);
    return s;
}

// ---------------------------------------------------------------------------
// perversities on symbolic strata

ExtInt sym_value(const SymPerv& p, const std::string& id) {
    auto it = p.find(id);
    return it == p.end() ? ExtInt::fin(0) : it->second;
}

std::string sym_perv_key(const SymPerv& p) {
    std::string out;
    for (const auto& [id, v] : p) {
        if (v == ExtInt::fin(0)) continue;
        if (!out.empty()) out += ",";
        out += id + "=" + v.to_string();
    }
    return out.empty() ? "0" : out;
}

ExtInt sym_top_value(const SymSpace& space, const std::string& id) {
    const SymStratum* s = space.find(id);
    if (!s) fail("StratumMismatch", "no symbolic stratum " + id);
    return ExtInt::fin(space.formal_dim - s->formal_dim - 2);
}

bool sym_leq_top(const SymSpace& space, const SymPerv& p) {
    for (const auto& st : space.singular)
        if (!(sym_value(p, st.id) <= sym_top_value(space, st.id))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// facts

std::string Fact::key() const {
    return space->to_string() + " | " + perv + " | " + std::to_string(ell);
}

std::string Fact::line() const {
    std::string out = "pi[" + std::to_string(ell) + "]^{" + perv + "}(" + space->to_string() + ") ";
    out += not_trivial ? "!= 1" : "= " + group.to_string();
    out += "  via";
    for (const auto& c : chain) out += " <" + c + ">";
    out += " [" + provenance + "]";
    return out;
}

std::string ConsistencyReport::to_text() const {
    std::string out = consistent ? "consistent\n" : "CONTRADICTIONS FOUND\n";
    for (const auto& c : contradictions) out += c + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// calculator

Calculator::Calculator(bool load_builtin) {
    if (load_builtin) load_atoms(builtin_atom_declarations());
}

SymSpacePtr Calculator::atom(const std::string& name) const {
    auto it = atoms_.find(name);
    if (it == atoms_.end()) fail("UsageError", "no atom named " + name);
    return it->second;
}

SymGroup Calculator::pi1_regular_part(const std::string& atom_name) const {
    auto it = pi1_regular_.find(atom_name);
    return it == pi1_regular_.end() ? SymGroup::unknown("not declared") : it->second;
}

SymSpacePtr Calculator::declare_atom(const AtomDecl& decl) {
    // internal consistency: declared pi1 abelianization must match H1
    for (const auto& [ell, g] : decl.pi) {
        if (ell != 1) continue;
        auto ab = g.abelian_rank();
        if (!ab) continue;
        int h1 = 0;
        for (auto [k, r] : decl.homology_rank)
            if (k == 1) h1 = r;
        if (ab->first != h1)
            fail("InconsistentDeclaration", "atom " + decl.name + ": pi1 abelianization rank " +
                                                std::to_string(ab->first) + " but H1 rank " +
                                                std::to_string(h1));
    }
    auto s = std::make_shared<SymSpace>();
    s->kind = SymSpace::Kind::Atom;
    s->atom_name = decl.name;
    s->formal_dim = decl.formal_dim;
    s->connected = decl.connected;
    s->normal = decl.normal;
    s->pre_thom_mather = decl.pre_thom_mather;
    s->regular_components = decl.regular_components;
    for (const auto& ds : decl.singular) {
        if (ds.id == "v" || ds.id.rfind("sph", 0) == 0 || ds.id.rfind("c_", 0) == 0 ||
            ds.id.rfind("j_", 0) == 0)
            fail("InconsistentDeclaration", "reserved stratum id: " + ds.id);
        SymStratum st;
        st.id = ds.id;
        st.formal_dim = ds.formal_dim;
        if (!ds.link_atom.empty()) st.link = atom(ds.link_atom);
        s->singular.push_back(st);
    }
    s->below = decl.below;
    sort_strata(*s);
    atoms_[decl.name] = s;
    pi1_regular_[decl.name] = decl.pi1_regular_part;
    // declared homotopy values enter the fact base (trivial stratification)
    if (s->singular.empty()) {
        for (const auto& [ell, g] : decl.pi) {
            Fact f;
            f.space = s;
            f.perv = "0";
            f.ell = ell;
            f.group = g;
            f.chain = {"atom-declaration"};
            f.provenance = decl.provenance;
            facts_.push_back(f);
        }
    }
    return s;
}

void Calculator::add_recorded_fact(SymSpacePtr space, const SymPerv& p, int ell, bool not_trivial,
                                const SymGroup& group, const std::string& cite) {
    Fact f;
    f.space = space;
    f.perv = sym_perv_key(p);
    f.ell = ell;
    f.not_trivial = not_trivial;
    f.group = group;
    f.chain = {"recorded: " + cite};
    f.provenance = "recorded";
    facts_.push_back(f);
}

std::optional<Fact> Calculator::lookup(const std::string& key) const {
    // recorded facts cannot be derived over: prefer them
    for (const auto& f : facts_)
        if (f.provenance == "recorded" && f.key() == key && !f.not_trivial) return f;
    for (const auto& f : facts_)
        if (f.key() == key && !f.not_trivial && !f.group.is_unknown()) return f;
    return std::nullopt;
}

Fact Calculator::remember(Fact f) {
    for (const auto& g : facts_)
        if (g.key() == f.key() && g.not_trivial == f.not_trivial &&
            g.group.same_as(f.group) && g.chain == f.chain)
            return f; // exact duplicate
    facts_.push_back(f);
    return f;
}

Fact Calculator::request(SymSpacePtr space, const SymPerv& p, int ell) {
    Fact probe;
    probe.space = space;
    probe.perv = sym_perv_key(p);
    probe.ell = ell;
    if (auto hit = lookup(probe.key())) return *hit;
    if (ell == 0) {
        try {
            return rule_pi0(space, p);
        } catch (const Error& e) {
            probe.group = SymGroup::unknown(e.what());
            return probe;
        }
    }
    switch (space->kind) {
        case SymSpace::Kind::Atom:
            if (space->singular.empty()) {
                probe.group = SymGroup::unknown("no declared value for pi[" +
                                                std::to_string(ell) + "](" + space->atom_name + ")");
            } else {
                probe.group = SymGroup::unknown("no rule for a stratified atom without a recorded fact");
            }
            return probe;
        case SymSpace::Kind::Cone: return rule_cone(space, p, ell);
        case SymSpace::Kind::ProdEuclid: return rule_product(space, p, ell);
        case SymSpace::Kind::JoinSphere:
            probe.group = SymGroup::unknown("no join rule (Van Kampen is outside the rule set)");
            return remember(probe);
        case SymSpace::Kind::Coarsen: return rule_coarsen(space, p, ell);
    }
    probe.group = SymGroup::unknown("unhandled expression");
    return probe;
}

Fact Calculator::rule_cone(SymSpacePtr cone, const SymPerv& p, int ell) {
    if (cone->kind != SymSpace::Kind::Cone) fail("UsageError", "rule_cone needs a cone expression");
    Fact out;
    out.space = cone;
    out.perv = sym_perv_key(p);
    out.ell = ell;
    out.provenance = "derived";
    ExtInt apex = sym_value(p, "v");
    ExtInt dual = ExtInt::fin(cone->formal_dim - 2) - apex;
    SymPerv base_perv;
    for (const auto& [id, v] : p)
        if (id.rfind("c_", 0) == 0) base_perv[id.substr(2)] = v;
    if (ell == 0) {
        if (ExtInt::fin(0) <= dual) {
            Fact base = request(cone->base, base_perv, 0);
            out.group = base.group;
            out.not_trivial = base.not_trivial;
            out.chain = base.chain;
            out.chain.push_back("rule_cone: cone formula with l=0 <= Dp(v)=" + dual.to_string());
            return remember(out);
        }
        out.group = SymGroup::unknown("cone-formula degree-0 convention undecided for Dp(v) < 0");
        return remember(out);
    }
    if (ExtInt::fin(ell) > dual) {
        out.group = SymGroup::trivial();
        out.chain = {"rule_cone: cone formula, truncation branch, l=" + std::to_string(ell) +
                     " > Dp(v)=" + dual.to_string()};
        return remember(out);
    }
    Fact base = request(cone->base, base_perv, ell);
    if (base.group.is_unknown() && !base.not_trivial) {
        out.group = SymGroup::unknown("MissingBaseFact: " + base.group.label);
        return remember(out);
    }
    out.group = base.group;
    out.not_trivial = base.not_trivial;
    out.chain = base.chain;
    out.chain.push_back("rule_cone: cone formula, transfer branch, l=" + std::to_string(ell) +
                        " <= Dp(v)=" + dual.to_string());
    return remember(out);
}

Fact Calculator::rule_product(SymSpacePtr prod, const SymPerv& p, int ell) {
    if (prod->kind != SymSpace::Kind::ProdEuclid)
        fail("UsageError", "rule_product needs a euclidean product");
    Fact base = request(prod->base, p, ell);
    Fact out;
    out.space = prod;
    out.perv = sym_perv_key(p);
    out.ell = ell;
    out.provenance = "derived";
    out.group = base.group;
    out.not_trivial = base.not_trivial;
    out.chain = base.chain;
    out.chain.push_back("rule_product: euclidean factor contributes trivially");
    return remember(out);
}

Fact Calculator::rule_pi0(SymSpacePtr space, const SymPerv& p, bool link_of_normal_connected) {
    if (!sym_leq_top(*space, p))
        fail("PerversityTooLarge", "pi0^p identification needs p <= t-bar");
    Fact out;
    out.space = space;
    out.perv = sym_perv_key(p);
    out.ell = 0;
    out.provenance = "derived";
    if (link_of_normal_connected) {
        out.group = SymGroup::trivial();
        out.chain = {"rule_pi0: links of normal connected spaces are p-connected"};
        return remember(out);
    }
    int rc = space->regular_components;
    if (rc >= 0) {
        out.group = rc <= 1 ? SymGroup::trivial()
                            : SymGroup::named("components:" + std::to_string(rc));
        out.chain = {"rule_pi0: pi0^p = pi0 of the regular part"};
        return remember(out);
    }
    // Coarsen with absorbed strata: transfer the component count along the pullback
    if (space->kind == SymSpace::Kind::Coarsen) {
        SymPerv pulled; // members inherit the coarse value, absorbed strata get 0
        for (const auto& [target, members] : space->merge)
            for (const auto& mid : members) pulled[mid] = sym_value(p, target);
        bool one_exc = false;
        for (const auto& bs : space->base->singular) {
            bool listed = pulled.count(bs.id) > 0;
            if (!listed && space->base->formal_dim - bs.formal_dim == 1) one_exc = true;
        }
        if (!one_exc && sym_leq_top(*space->base, pulled)) {
            Fact base = rule_pi0(space->base, pulled);
            out.group = base.group;
            out.chain = base.chain;
            out.chain.push_back("rule_pi0: component bijection along the coarsening (pullback route)");
            return remember(out);
        }
    }
    out.group = SymGroup::unknown("pi0 of the coarse regular part is not derivable");
    return remember(out);
}

Calculator::CoarsenHypotheses Calculator::coarsen_hypotheses(SymSpacePtr coarse,
                                                             const SymPerv& p_fine) {
    if (coarse->kind != SymSpace::Kind::Coarsen)
        fail("UsageError", "coarsen_hypotheses needs a coarsening expression");
    const SymSpace& fine = *coarse->base;
    CoarsenHypotheses h;
    std::map<std::string, std::string> target_of;
    for (const auto& [target, members] : coarse->merge)
        for (const auto& mid : members) target_of[mid] = target;
    for (const auto& st : fine.singular)
        if (!target_of.count(st.id)) {
            h.exceptional.push_back(st.id);
            if (fine.formal_dim - st.formal_dim == 1) h.one_exceptional = true;
        }

    auto tv = [&](const std::string& id) { return sym_top_value(fine, id); };
    h.k_perversity = true;
    // (K1)/(K2) over pairs with the same image, including the absorbed ones
    auto image = [&](const std::string& id) {
        auto it = target_of.find(id);
        return it == target_of.end() ? std::string("<regular>") : it->second;
    };
    for (const auto& a : fine.singular)
        for (const auto& b : fine.singular) {
            if (a.id == b.id || image(a.id) != image(b.id)) continue;
            bool a_below_b = false;
            for (const auto& [x, y] : fine.below)
                if (x == a.id && y == b.id) a_below_b = true;
            if (a_below_b) {
                ExtInt lo = sym_value(p_fine, b.id);
                ExtInt hi = lo + (tv(a.id) - tv(b.id));
                ExtInt va = sym_value(p_fine, a.id);
                if (!(lo <= va && va <= hi)) {
                    h.k_perversity = false;
                    h.k_certificate = "K1 fails on " + a.id + " <= " + b.id;
                }
            }
            if (a.formal_dim == b.formal_dim &&
                sym_value(p_fine, a.id) != sym_value(p_fine, b.id)) {
                h.k_perversity = false;
                h.k_certificate = "K2 fails on " + a.id + ", " + b.id;
            }
        }
    // exceptional positivity on exceptional strata (pairing with a regular stratum above)
    for (const auto& id : h.exceptional) {
        ExtInt v = sym_value(p_fine, id);
        if (!(ExtInt::fin(0) <= v && v <= tv(id))) {
            h.k_perversity = false;
            h.k_certificate = "exceptional positivity fails on exceptional " + id + ": need 0 <= " + v.to_string() +
                              " <= " + tv(id).to_string();
        }
    }
    h.below_top = sym_leq_top(fine, p_fine);

    bool all_trivial = true;
    for (const auto& id : h.exceptional) {
        const SymStratum* st = fine.find(id);
        std::string status = "Unknown";
        if (st->link) {
            SymPerv link_perv;
            for (const auto& [l, amb] : st->link_map) link_perv["c_" + l] = sym_value(p_fine, amb);
            link_perv["v"] = sym_value(p_fine, id); // apex takes the stratum's own value
            Fact f = rule_cone(cone_space(st->link), link_perv, 1);
            if (f.not_trivial) status = "Nontrivial";
            else if (f.group.is_unknown()) status = "Unknown";
            else status = f.group.is_trivial() ? "Trivial" : "Nontrivial";
        } else {
            status = "Unknown";
        }
        if (status != "Trivial") all_trivial = false;
        h.link_status.push_back({id, status});
    }
    h.theorem_A = h.k_perversity && h.below_top && h.exceptional.empty();
    h.theorem_B = h.k_perversity && h.below_top && fine.normal && fine.connected &&
                  fine.pre_thom_mather && all_trivial;
    return h;
}

Fact Calculator::rule_coarsen(SymSpacePtr coarse, const SymPerv& p, int ell) {
    if (coarse->kind != SymSpace::Kind::Coarsen)
        fail("UsageError", "rule_coarsen needs a coarsening expression");
    const SymSpace& fine = *coarse->base;

    // which side does the perversity live on?
    bool on_coarse = true, on_fine = true;
    for (const auto& [id, v] : p) {
        if (v == ExtInt::fin(0)) continue;
        if (!coarse->find(id)) on_coarse = false;
        if (!fine.find(id)) on_fine = false;
    }

    SymPerv p_fine;
    std::string coarse_key;
    std::string route;
    if (on_coarse && !p.empty() && !on_fine) {
        // 8.1/8.2 route: pull the coarse perversity back
        for (const auto& [target, members] : coarse->merge)
            for (const auto& mid : members) p_fine[mid] = sym_value(p, target);
        coarse_key = sym_perv_key(p);
        route = "pullback (refinement route)";
    } else {
        p_fine = p;
        // pushforward: each target takes the infimum over its members
        SymPerv q;
        for (const auto& [target, members] : coarse->merge) {
            ExtInt inf = ExtInt::pos_inf();
            for (const auto& mid : members)
                if (sym_value(p_fine, mid) < inf) inf = sym_value(p_fine, mid);
            q[target] = inf;
        }
        coarse_key = sym_perv_key(q);
        route = "pushforward (Theorems A/B)";
    }

    Fact out;
    out.space = coarse;
    out.perv = coarse_key;
    out.ell = ell;
    out.provenance = "derived";
    if (auto hit = lookup(out.key())) return *hit;

    CoarsenHypotheses h = coarsen_hypotheses(coarse, p_fine);
    if (!h.theorem_A && !h.theorem_B) {
        std::string why;
        if (!h.k_perversity) why = h.k_certificate;
        else if (!h.below_top) why = "p is not bounded by t-bar";
        else {
            why = "exceptional strata present and Theorem B hypothesis fails:";
            for (const auto& [id, status] : h.link_status)
                if (status != "Trivial") why += " pi1(cone of link of " + id + ") is " + status;
        }
        out.group = SymGroup::unknown(why);
        return remember(out);
    }
    Fact base = request(coarse->base, p_fine, ell);
    if (base.group.is_unknown() && !base.not_trivial) {
        out.group = SymGroup::unknown("MissingBaseFact: " + base.group.label);
        return remember(out);
    }
    out.group = base.group;
    out.not_trivial = base.not_trivial;
    out.chain = base.chain;
    out.chain.push_back("rule_coarsen: " + std::string(h.theorem_A ? "Theorem A" : "Theorem B") +
                        " transfer via " + route);
    return remember(out);
}

ConsistencyReport Calculator::consistency_check() const {
    ConsistencyReport r;
    for (size_t i = 0; i < facts_.size(); ++i)
        for (size_t j = i + 1; j < facts_.size(); ++j) {
            const Fact& a = facts_[i];
            const Fact& b = facts_[j];
            if (a.key() != b.key()) continue;
            bool a_known = !a.not_trivial && !a.group.is_unknown();
            bool b_known = !b.not_trivial && !b.group.is_unknown();
            if (a_known && b_known && !a.group.same_as(b.group)) {
                r.consistent = false;
                r.contradictions.push_back("conflicting values:\n  " + a.line() + "\n  " + b.line());
            }
            if ((a.not_trivial && b_known && b.group.is_trivial()) ||
                (b.not_trivial && a_known && a.group.is_trivial())) {
                r.consistent = false;
                r.contradictions.push_back("inequality violated:\n  " + a.line() + "\n  " + b.line());
            }
        }
    return r;
}

std::string Calculator::dump() const {
    std::string out;
    for (const auto& f : facts_) out += f.line() + "\n";
    return out;
}

void Calculator::load_atoms(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::optional<AtomDecl> cur;
    auto flush = [&]() {
        if (cur) declare_atom(*cur);
        cur.reset();
    };
    std::vector<std::string> recorded_lines;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "atom") {
            flush();
            cur = AtomDecl{};
            ls >> cur->name;
            std::string kv;
            while (ls >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) fail("ParseError", "bad atom attribute: " + kv);
                std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
                if (k == "dim") cur->formal_dim = std::stoi(v);
                else if (k == "connected") cur->connected = v != "0";
                else if (k == "normal") cur->normal = v != "0";
                else if (k == "pretm") cur->pre_thom_mather = v != "0";
                else if (k == "regcomp") cur->regular_components = std::stoi(v);
                else fail("ParseError", "unknown atom attribute: " + k);
            }
        } else if (word == "stratum") {
            if (!cur) fail("ParseError", "stratum outside an atom block");
            AtomDecl::Stratum st;
            ls >> st.id;
            std::string kv;
            while (ls >> kv) {
                auto eq = kv.find('=');
                std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
                if (k == "dim") st.formal_dim = std::stoi(v);
                else if (k == "link") st.link_atom = v;
                else fail("ParseError", "unknown stratum attribute: " + k);
            }
            cur->singular.push_back(st);
        } else if (word == "below") {
            if (!cur) fail("ParseError", "below outside an atom block");
            std::string a, b;
            ls >> a >> b;
            cur->below.push_back({a, b});
        } else if (word == "H") {
            if (!cur) fail("ParseError", "H outside an atom block");
            int k;
            std::string eq;
            int rank;
            ls >> k >> eq >> rank;
            cur->homology_rank.push_back({k, rank});
        } else if (word == "pi") {
            if (!cur) fail("ParseError", "pi outside an atom block");
            int k;
            std::string eq, group, prov;
            ls >> k >> eq >> group;
            ls >> prov;
            cur->pi.push_back({k, SymGroup::parse(group)});
            if (!prov.empty() && prov.rfind("recorded", 0) == 0) cur->provenance = "recorded";
        } else if (word == "pi1reg") {
            if (!cur) fail("ParseError", "pi1reg outside an atom block");
            std::string eq, group;
            ls >> eq >> group;
            cur->pi1_regular_part = SymGroup::parse(group);
        } else if (word == "recordedfact") {
            std::string rest;
            std::getline(ls, rest);
            recorded_lines.push_back(rest);
        } else {
            fail("ParseError", "unknown declaration: " + word);
        }
    }
    flush();
    // recordedfact <expr> | <perv or -> | pi <l> = <group|!1> | <cite>
    for (const auto& raw : recorded_lines) {
        std::vector<std::string> parts;
        std::string cur_part;
        std::istringstream rs(raw);
        std::string tok;
        while (rs >> tok) {
            if (tok == "|") {
                parts.push_back(cur_part);
                cur_part.clear();
            } else {
                if (!cur_part.empty()) cur_part += " ";
                cur_part += tok;
            }
        }
        parts.push_back(cur_part);
        if (parts.size() != 4) fail("ParseError", "bad recordedfact line: " + raw);
        // expression: NAME or cone(NAME)
        SymSpacePtr space;
        std::string expr = parts[0];
        if (expr.rfind("cone(", 0) == 0 && expr.back() == ')') {
            space = cone_space(atom(expr.substr(5, expr.size() - 6)));
        } else {
            space = atom(expr);
        }
        SymPerv perv;
        if (parts[1] != "-") {
            std::istringstream ps(parts[1]);
            std::string assign;
            while (ps >> assign) {
                auto eq = assign.find('=');
                if (eq == std::string::npos) fail("ParseError", "bad perversity: " + assign);
                perv[assign.substr(0, eq)] = ExtInt::parse(assign.substr(eq + 1));
            }
        }
        std::istringstream vs(parts[2]);
        std::string pi_word, eq;
        int ell;
        std::string group;
        vs >> pi_word >> ell >> eq >> group;
        bool not_trivial = (group == "!1");
        add_recorded_fact(space, perv, ell, not_trivial,
                       not_trivial ? SymGroup::unknown("inequality") : SymGroup::parse(group),
                       parts[3]);
    }
}

const std::string& builtin_atom_declarations() {
    static const std::string text = R"(# symbolic atoms shipped with the corpus
atom point dim=0 connected=1 normal=1 pretm=1 regcomp=1
H 0 = 1
pi 1 = 1 textbook
pi 2 = 1 textbook
atom S0 dim=0 connected=0 normal=1 pretm=1 regcomp=2
H 0 = 2
atom S1 dim=1 connected=1 normal=1 pretm=1 regcomp=1
H 0 = 1
H 1 = 1
pi 1 = Z textbook
pi 2 = 1 textbook
pi 3 = 1 textbook
atom S2 dim=2 connected=1 normal=1 pretm=1 regcomp=1
H 0 = 1
H 2 = 1
pi 1 = 1 textbook
pi 2 = Z textbook
atom S3 dim=3 connected=1 normal=1 pretm=1 regcomp=1
H 0 = 1
H 3 = 1
pi 1 = 1 textbook
pi 2 = 1 textbook
pi 3 = Z textbook
atom S4 dim=4 connected=1 normal=1 pretm=1 regcomp=1
H 0 = 1
H 4 = 1
pi 1 = 1 textbook
pi 2 = 1 textbook
pi 3 = 1 textbook
atom torus dim=2 connected=1 normal=1 pretm=1 regcomp=1
H 0 = 1
H 1 = 2
H 2 = 1
pi 1 = Z^2 textbook
pi 2 = 1 textbook
atom two_circles dim=1 connected=0 normal=1 pretm=1 regcomp=2
H 0 = 2
H 1 = 2
atom P dim=3 connected=1 normal=1 pretm=1 regcomp=1
H 0 = 1
H 3 = 1
pi 1 = binary-icosahedral recorded:double-suspension-context
pi 2 = 1 textbook
pi1reg = binary-icosahedral
atom pinched_torus dim=2 connected=1 normal=0 pretm=1 regcomp=1
stratum sigma dim=0 link=two_circles
H 0 = 1
H 1 = 1
H 2 = 1
pi1reg = Z recorded:Example-6.6
recordedfact pinched_torus | sigma=0 | pi 1 = 1 | the pinched-torus computation: the regular generator dies against allowable 2-simplices
recordedfact cone(pinched_torus) | - | pi 1 = 1 | the pinched-torus computation: pi1^0(cone T) = 1
)";
    return text;
}

SymSpacePtr example83_fine(const Calculator& calc) {
    return join_sphere_space(0, join_sphere_space(0, calc.atom("P")));
}

SymSpacePtr example83_coarse(const Calculator& calc) {
    return coarsen_space(example83_fine(calc), {});
}

SymPerv example83_perversity() {
    // Dp = 1-bar: p = t-bar - 1 on every singular stratum of S^5
    return {{"sph0", ExtInt::fin(2)},
            {"sph1", ExtInt::fin(2)},
            {"j_sph0", ExtInt::fin(1)},
            {"j_sph1", ExtInt::fin(1)}};
}

} // namespace stratum
