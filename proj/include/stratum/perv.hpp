#pragma once
// Perversities on strata: extended-integer values, the top/dual/codimensional
// families, transfer along coarsenings, and the K-perversity checkers.

#include <random>
#include <string>
#include <vector>

#include "stratum/strat.hpp"

namespace stratum {

// Z extended by -inf/+inf, totally ordered, with absorbing addition.
// (+inf) + (-inf) aborts with IndeterminateInfinity.
struct ExtInt {
    int kind = 0; // -1 neg-inf, 0 finite, +1 pos-inf
    long long v = 0;

    static ExtInt fin(long long x) { return {0, x}; }
    static ExtInt neg_inf() { return {-1, 0}; }
    static ExtInt pos_inf() { return {+1, 0}; }

    bool finite() const { return kind == 0; }

    ExtInt operator-() const { return {-kind, -v}; }
    ExtInt operator+(const ExtInt& o) const;
    ExtInt operator-(const ExtInt& o) const { return *this + (-o); }

    bool operator==(const ExtInt& o) const {
        return kind == o.kind && (kind != 0 || v == o.v);
    }
    bool operator!=(const ExtInt& o) const { return !(*this == o); }
    bool operator<(const ExtInt& o) const {
        if (kind != o.kind) return kind < o.kind;
        return kind == 0 && v < o.v;
    }
    bool operator<=(const ExtInt& o) const { return *this < o || *this == o; }
    bool operator>(const ExtInt& o) const { return o < *this; }
    bool operator>=(const ExtInt& o) const { return o <= *this; }

    std::string to_string() const;
    static ExtInt parse(const std::string& text); // integer | "inf" | "-inf"
};

// Values indexed like the strata of one stratification; regular strata pinned
// to zero.
struct Perversity {
    std::vector<ExtInt> values;

    const ExtInt& at(int stratum) const { return values[stratum]; }
    bool operator==(const Perversity& o) const { return values == o.values; }
};

Perversity zero_perversity(const Stratification& strat);
Perversity top_perversity(const Stratification& strat);
Perversity make_perversity(const Stratification& strat,
                           const std::vector<std::pair<std::string, ExtInt>>& named_values);

ExtInt top_value(const Stratification& strat, int stratum); // 0 on regular strata

Perversity dual(const Stratification& strat, const Perversity& p);

bool perv_leq(const Perversity& a, const Perversity& b);
bool leq_top(const Stratification& strat, const Perversity& p);

// Codimensional perversity: explicit values f(0..n), f(0) = 0.
struct CodimPerversityFn {
    std::vector<long long> values;
    long long at(int k) const;
};
CodimPerversityFn codim_fn_from_list(std::vector<long long> values);
CodimPerversityFn codim_fn_constant(long long k, int n);
CodimPerversityFn codim_fn_top(int n);

Perversity from_codim_fn(const Stratification& strat, const CodimPerversityFn& f);
bool growing_check(const CodimPerversityFn& f, int n);
// GM per Goresky-MacPherson: zero through codimension 2 and growing above.
// Codimension 1 is outside the classical GM domain and is not constrained.
bool is_GM(const CodimPerversityFn& f, int n);

// Transfer along a coarsening stratum map iota (S-stratum -> T-stratum).
Perversity pullback(const Stratification& s, const Stratification& t,
                    const std::vector<int>& iota, const Perversity& q_on_t);

struct PushforwardResult {
    Perversity perversity;
    std::vector<std::string> infimum_notes; // cases where the Z-bar infimum involved -inf or an empty set
};
PushforwardResult pushforward(const Stratification& s, const Stratification& t,
                              const std::vector<int>& iota, const Perversity& p_on_s);

struct KCheck {
    bool ok = true;
    std::string certificate; // first violating pair, when not ok
};
KCheck is_K_perversity(const Stratification& s, const Stratification& t,
                       const std::vector<int>& iota, const Perversity& p);

// The link inherits the values of the ambient strata around the
// carrier; the virtual apex records the stratum's own value.
struct LinkPerversity {
    Perversity on_link;
    ExtInt apex_value;
};
LinkPerversity link_induced_perversity(const Stratification& strat, const Perversity& p,
                                       int stratum, const StratumLink& link);

// Seeded generators for the property suites.
Perversity random_perversity(const Stratification& strat, std::mt19937& rng);

// The push-pull comparison compares pullback-of-pushforward against p, which pins
// exceptional strata to nonnegative values (exceptional positivity regime); resample any
// negative entries over exceptional strata.
Perversity exceptional_nonnegative(const Stratification& s, const Stratification& t,
                                   const std::vector<int>& iota, Perversity p,
                                   std::mt19937& rng);
// Always a valid K-perversity for (s, t, iota); <= top when below_top is set.
Perversity random_K_perversity(const Stratification& s, const Stratification& t,
                               const std::vector<int>& iota, std::mt19937& rng, bool below_top);

std::string perversity_to_string(const Stratification& strat, const Perversity& p);

} // namespace stratum
