#pragma once
// Rule-based calculator for intersection-homotopy facts on spaces built from
// declared atoms via cone, sphere-join, Euclidean-product and coarsening
// constructors. Rules fire only with their hypothesis certificates; every
// fact carries a provenance chain; recorded facts are never overridden.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stratum/perv.hpp"

namespace stratum {

struct SymGroup {
    enum class Kind { Trivial, FreeAbelian, Named, Product, Unknown };
    Kind kind = Kind::Unknown;
    int rank = 0;            // FreeAbelian
    std::string label;       // Named payload or Unknown reason
    std::vector<SymGroup> factors;

    static SymGroup trivial() { return {Kind::Trivial, 0, "", {}}; }
    static SymGroup free_abelian(int n);
    static SymGroup named(const std::string& l) { return {Kind::Named, 0, l, {}}; }
    static SymGroup product(std::vector<SymGroup> fs);
    static SymGroup unknown(const std::string& reason) { return {Kind::Unknown, 0, reason, {}}; }
    static SymGroup parse(const std::string& text);

    SymGroup canonical() const; // flatten products, drop trivial, merge free parts
    bool is_trivial() const { return canonical().kind == Kind::Trivial; }
    bool is_unknown() const { return kind == Kind::Unknown; }
    bool same_as(const SymGroup& o) const;
    std::string to_string() const;
    // abelianization (rank, torsion-free part only) when determinable
    std::optional<std::pair<int, bool>> abelian_rank() const; // (rank, known_exactly)
};

struct SymSpace;
using SymSpacePtr = std::shared_ptr<const SymSpace>;

struct SymStratum {
    std::string id;
    int formal_dim = 0;
    SymSpacePtr link; // null when not modeled
    // link's singular stratum id -> this space's stratum id around the carrier
    std::vector<std::pair<std::string, std::string>> link_map;
};

struct SymSpace {
    enum class Kind { Atom, Cone, JoinSphere, ProdEuclid, Coarsen };
    Kind kind = Kind::Atom;
    std::string atom_name;
    SymSpacePtr base;
    int param = 0; // m for JoinSphere, a for ProdEuclid
    // Coarsen merge groups: target singular stratum -> base stratum ids;
    // base singular ids not listed are absorbed into the regular part.
    std::vector<std::pair<std::string, std::vector<std::string>>> merge;

    int formal_dim = 0;
    bool connected = true;
    bool normal = true;
    bool pre_thom_mather = true;
    int regular_components = 1;
    std::vector<SymStratum> singular;                       // sorted by id
    std::vector<std::pair<std::string, std::string>> below; // strict closure pairs a < b

    const SymStratum* find(const std::string& id) const;
    std::string to_string() const;
};

SymSpacePtr cone_space(SymSpacePtr base);
SymSpacePtr join_sphere_space(int m, SymSpacePtr base);
SymSpacePtr prod_euclid_space(int a, SymSpacePtr base);
SymSpacePtr coarsen_space(SymSpacePtr base,
                          std::vector<std::pair<std::string, std::vector<std::string>>> merge);

// perversity on symbolic strata: unlisted singular ids default to 0
using SymPerv = std::map<std::string, ExtInt>;
std::string sym_perv_key(const SymPerv& p);
ExtInt sym_value(const SymPerv& p, const std::string& id);
ExtInt sym_top_value(const SymSpace& space, const std::string& id);
bool sym_leq_top(const SymSpace& space, const SymPerv& p);

struct Fact {
    SymSpacePtr space;
    std::string perv;
    int ell = 0;
    bool not_trivial = false; // inequality fact; group unused
    SymGroup group;
    std::vector<std::string> chain; // rule ids with hypothesis certificates
    std::string provenance;         // "recorded" | "declared" | "derived"
    std::string key() const;
    std::string line() const;
};

struct ConsistencyReport {
    bool consistent = true;
    std::vector<std::string> contradictions;
    std::string to_text() const;
};

struct AtomDecl {
    std::string name;
    int formal_dim = 0;
    bool connected = true;
    bool normal = true;
    bool pre_thom_mather = true;
    int regular_components = 1;
    struct Stratum {
        std::string id;
        int formal_dim = 0;
        std::string link_atom; // optional
    };
    std::vector<Stratum> singular;
    std::vector<std::pair<std::string, std::string>> below;
    std::vector<std::pair<int, int>> homology_rank; // (degree, rank)
    std::vector<std::pair<int, SymGroup>> pi;       // trivial-stratification homotopy
    SymGroup pi1_regular_part = SymGroup::unknown("not declared");
    std::string provenance = "declared";
};

class Calculator {
public:
    // loads the builtin declarations unless told otherwise (e.g. when an
    // external atoms.decl file is about to be loaded instead)
    explicit Calculator(bool load_builtin = true);

    // parse "atom ..." / "recordedfact ..." declarations
    void load_atoms(const std::string& text);
    SymSpacePtr atom(const std::string& name) const;
    bool has_atom(const std::string& name) const { return atoms_.count(name) > 0; }
    SymSpacePtr declare_atom(const AtomDecl& decl);
    void add_recorded_fact(SymSpacePtr space, const SymPerv& p, int ell, bool not_trivial,
                        const SymGroup& group, const std::string& cite);

    // resolve pi_ell^p(space); Unknown is a value, never an error
    Fact request(SymSpacePtr space, const SymPerv& p, int ell);

    Fact rule_cone(SymSpacePtr cone, const SymPerv& p, int ell);
    Fact rule_product(SymSpacePtr prod, const SymPerv& p, int ell);
    Fact rule_pi0(SymSpacePtr space, const SymPerv& p, bool link_of_normal_connected = false);
    Fact rule_coarsen(SymSpacePtr coarse, const SymPerv& p, int ell);

    // symbolic theorem-hypothesis data for a Coarsen expression
    struct CoarsenHypotheses {
        bool k_perversity = false;
        std::string k_certificate;
        bool below_top = false;
        std::vector<std::string> exceptional;
        bool one_exceptional = false;
        std::vector<std::pair<std::string, std::string>> link_status; // stratum -> status
        bool theorem_A = false;
        bool theorem_B = false;
    };
    CoarsenHypotheses coarsen_hypotheses(SymSpacePtr coarse, const SymPerv& p_fine);

    ConsistencyReport consistency_check() const;
    std::string dump() const;
    const std::vector<Fact>& facts() const { return facts_; }
    SymGroup pi1_regular_part(const std::string& atom_name) const;

private:
    std::map<std::string, SymSpacePtr> atoms_;
    std::map<std::string, SymGroup> pi1_regular_;
    std::vector<Fact> facts_;

    std::optional<Fact> lookup(const std::string& key) const;
    Fact remember(Fact f);
};

// The atoms shipped with the corpus (also available as fixtures/atoms.decl).
const std::string& builtin_atom_declarations();

// example83 objects built from the registry.
SymSpacePtr example83_fine(const Calculator& calc);
SymSpacePtr example83_coarse(const Calculator& calc);
SymPerv example83_perversity(); // Dp = 1-bar

} // namespace stratum
