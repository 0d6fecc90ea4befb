#include "stratum/perv.hpp"

#include <algorithm>

namespace stratum {

ExtInt ExtInt::operator+(const ExtInt& o) const {
    if (kind == 0 && o.kind == 0) return fin(v + o.v);
    if (kind == 0) return o;
    if (o.kind == 0) return *this;
    if (kind != o.kind) fail("IndeterminateInfinity", "(+inf) + (-inf) requested");
    return *this;
}

std::string ExtInt::to_string() const {
    if (kind < 0) return "-inf";
    if (kind > 0) return "inf";
    return std::to_string(v);
}

ExtInt ExtInt::parse(const std::string& text) {
    if (text == "inf" || text == "+inf") return pos_inf();
    if (text == "-inf") return neg_inf();
    try {
        size_t pos = 0;
        long long v = std::stoll(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return fin(v);
    } catch (...) {
        fail("ParseError", "bad extended integer: " + text);
    }
}

Perversity zero_perversity(const Stratification& strat) {
    Perversity p;
    p.values.assign(strat.strata().size(), ExtInt::fin(0));
    return p;
}

ExtInt top_value(const Stratification& strat, int stratum) {
    const Stratum& s = strat.strata()[stratum];
    return s.regular ? ExtInt::fin(0) : ExtInt::fin(s.codim - 2);
}

Perversity top_perversity(const Stratification& strat) {
    Perversity p = zero_perversity(strat);
    for (size_t i = 0; i < strat.strata().size(); ++i)
        p.values[i] = top_value(strat, static_cast<int>(i));
    return p;
}

Perversity make_perversity(const Stratification& strat,
                           const std::vector<std::pair<std::string, ExtInt>>& named_values) {
    Perversity p = zero_perversity(strat);
    for (const auto& [name, value] : named_values) {
        int idx = strat.stratum_by_name(name);
        if (idx < 0) fail("StratumMismatch", "no stratum named " + name);
        if (strat.strata()[idx].regular && value != ExtInt::fin(0))
            fail("StratumMismatch", "regular stratum " + name + " must carry 0");
        p.values[idx] = value;
    }
    return p;
}

Perversity dual(const Stratification& strat, const Perversity& p) {
    Perversity d = zero_perversity(strat);
    for (size_t i = 0; i < strat.strata().size(); ++i)
        if (!strat.strata()[i].regular)
            d.values[i] = top_value(strat, static_cast<int>(i)) - p.values[i];
    return d;
}

bool perv_leq(const Perversity& a, const Perversity& b) {
    for (size_t i = 0; i < a.values.size(); ++i)
        if (!(a.values[i] <= b.values[i])) return false;
    return true;
}

bool leq_top(const Stratification& strat, const Perversity& p) {
    for (size_t i = 0; i < strat.strata().size(); ++i)
        if (!(p.values[i] <= top_value(strat, static_cast<int>(i)))) return false;
    return true;
}

long long CodimPerversityFn::at(int k) const {
    if (k < 0) fail("ShapeMismatch", "negative codimension");
    if (k < static_cast<int>(values.size())) return values[k];
    return values.empty() ? 0 : values.back();
}

CodimPerversityFn codim_fn_from_list(std::vector<long long> values) {
    if (values.empty() || values[0] != 0) fail("ParseError", "codimensional perversity needs f(0) = 0");
    return {std::move(values)};
}

CodimPerversityFn codim_fn_constant(long long k, int n) {
    std::vector<long long> v(static_cast<size_t>(std::max(n, 1)) + 1, k);
    v[0] = 0;
    return {std::move(v)};
}

CodimPerversityFn codim_fn_top(int n) {
    std::vector<long long> v(static_cast<size_t>(std::max(n, 1)) + 1, 0);
    for (size_t k = 1; k < v.size(); ++k) v[k] = static_cast<long long>(k) - 2;
    return {std::move(v)};
}

Perversity from_codim_fn(const Stratification& strat, const CodimPerversityFn& f) {
    Perversity p = zero_perversity(strat);
    for (size_t i = 0; i < strat.strata().size(); ++i)
        if (!strat.strata()[i].regular)
            p.values[i] = ExtInt::fin(f.at(strat.strata()[i].codim));
    return p;
}

bool growing_check(const CodimPerversityFn& f, int n) {
    for (int k = 1; k < n; ++k)
        if (!(f.at(k) <= f.at(k + 1) && f.at(k + 1) <= f.at(k) + 1)) return false;
    return true;
}

bool is_GM(const CodimPerversityFn& f, int n) {
    if (f.at(0) != 0 || f.at(2) != 0) return false;
    for (int k = 2; k < n; ++k)
        if (!(f.at(k) <= f.at(k + 1) && f.at(k + 1) <= f.at(k) + 1)) return false;
    return true;
}

Perversity pullback(const Stratification& s, const Stratification& /*t*/,
                    const std::vector<int>& iota, const Perversity& q_on_t) {
    Perversity p = zero_perversity(s);
    for (size_t i = 0; i < s.strata().size(); ++i)
        if (!s.strata()[i].regular) p.values[i] = q_on_t.values[iota[i]];
    return p;
}

PushforwardResult pushforward(const Stratification& s, const Stratification& t,
                              const std::vector<int>& iota, const Perversity& p_on_s) {
    PushforwardResult out;
    out.perversity = zero_perversity(t);
    for (size_t j = 0; j < t.strata().size(); ++j) {
        if (t.strata()[j].regular) continue;
        bool any = false;
        ExtInt inf = ExtInt::pos_inf();
        for (size_t i = 0; i < s.strata().size(); ++i) {
            if (iota[i] != static_cast<int>(j)) continue;
            any = true;
            if (p_on_s.values[i] < inf) inf = p_on_s.values[i];
        }
        out.perversity.values[j] = inf;
        if (!any)
            out.infimum_notes.push_back("inf over empty preimage of " + t.strata()[j].id + " = inf");
        else if (inf == ExtInt::neg_inf())
            out.infimum_notes.push_back("order-theoretic infimum -inf taken over preimage of " +
                                        t.strata()[j].id);
    }
    return out;
}

KCheck is_K_perversity(const Stratification& s, const Stratification& /*t*/,
                       const std::vector<int>& iota, const Perversity& p) {
    const auto& strata = s.strata();
    int ns = static_cast<int>(strata.size());
    auto tv = [&](int i) { return top_value(s, i); };
    for (int a = 0; a < ns; ++a)
        for (int b = 0; b < ns; ++b) {
            if (a == b || iota[a] != iota[b]) continue;
            // (K1) on comparable pairs a <= b
            if (s.poset().leq[a][b]) {
                ExtInt lower = p.values[b];
                ExtInt upper = p.values[b] + (tv(a) - tv(b));
                if (!(lower <= p.values[a] && p.values[a] <= upper)) {
                    return {false, "K1 violated on " + strata[a].id + " <= " + strata[b].id +
                                       ": need " + lower.to_string() + " <= " +
                                       p.values[a].to_string() + " <= " + upper.to_string()};
                }
            }
            // (K2) on equi-dimensional pairs
            if (strata[a].formal_dim == strata[b].formal_dim && p.values[a] != p.values[b]) {
                return {false, "K2 violated on " + strata[a].id + ", " + strata[b].id + ": " +
                                   p.values[a].to_string() + " != " + p.values[b].to_string()};
            }
        }
    return {true, ""};
}

LinkPerversity link_induced_perversity(const Stratification& /*strat*/, const Perversity& p,
                                       int stratum, const StratumLink& link) {
    if (!link.stratification)
        fail("StratumMismatch", "link has no induced stratification" +
                                    (link.note.empty() ? std::string() : ": " + link.note));
    LinkPerversity out;
    out.apex_value = p.values[stratum];
    out.on_link = zero_perversity(*link.stratification);
    const auto& ls = link.stratification->strata();
    for (size_t k = 0; k < ls.size(); ++k) {
        if (ls[k].regular) continue;
        int ambient = link.ambient_stratum[k];
        if (ambient < 0)
            fail("StratumMismatch", "link stratum " + ls[k].id + " has no single ambient stratum");
        out.on_link.values[k] = p.values[ambient];
    }
    return out;
}

Perversity random_perversity(const Stratification& strat, std::mt19937& rng) {
    Perversity p = zero_perversity(strat);
    for (size_t i = 0; i < strat.strata().size(); ++i) {
        if (strat.strata()[i].regular) continue;
        int roll = static_cast<int>(rng() % 12);
        if (roll == 0) p.values[i] = ExtInt::pos_inf();
        else if (roll == 1) p.values[i] = ExtInt::neg_inf();
        else {
            long long top = top_value(strat, static_cast<int>(i)).v;
            long long lo = -3, hi = top + 3;
            p.values[i] = ExtInt::fin(lo + static_cast<long long>(rng() % (hi - lo + 1)));
        }
    }
    return p;
}

Perversity exceptional_nonnegative(const Stratification& s, const Stratification& t,
                                   const std::vector<int>& iota, Perversity p,
                                   std::mt19937& rng) {
    for (size_t i = 0; i < s.strata().size(); ++i) {
        if (s.strata()[i].regular || !t.strata()[iota[i]].regular) continue;
        if (p.values[i] < ExtInt::fin(0)) {
            long long hi = std::max(top_value(s, static_cast<int>(i)).v, 0LL) + 3;
            p.values[i] = ExtInt::fin(static_cast<long long>(rng() % (hi + 1)));
        }
    }
    return p;
}

Perversity random_K_perversity(const Stratification& s, const Stratification& t,
                               const std::vector<int>& iota, std::mt19937& rng, bool below_top) {
    Perversity p = zero_perversity(s);
    int nt = static_cast<int>(t.strata().size());
    for (int j = 0; j < nt; ++j) {
        std::vector<int> group;
        for (size_t i = 0; i < s.strata().size(); ++i)
            if (iota[i] == j && !s.strata()[i].regular) group.push_back(static_cast<int>(i));
        if (group.empty()) continue;
        bool exceptional_group = t.strata()[j].regular;
        // t-bar of a source-dimensional stratum of the target
        long long t_src = exceptional_group ? 0 : static_cast<long long>(t.strata()[j].codim) - 2;
        long long t_min = top_value(s, group[0]).v;
        for (int i : group) t_min = std::min(t_min, top_value(s, i).v);
        bool affine = (rng() % 2) == 0;
        if (affine) {
            // p(S) = b + (t(S) - t_src): saturates K1 along chains
            long long hi = below_top ? t_src : t_src + 3;
            long long lo = exceptional_group ? -t_min : -3;
            if (exceptional_group) hi = std::min(hi, 0LL);
            if (lo > hi) { affine = false; } else {
                long long b = lo + static_cast<long long>(rng() % (hi - lo + 1));
                for (int i : group)
                    p.values[i] = ExtInt::fin(b + top_value(s, i).v - t_src);
            }
        }
        if (!affine) {
            // constant on the group; exceptional strata are pinned to [0, t_min]
            // by exceptional positivity whether or not p <= t-bar is requested
            long long lo = exceptional_group ? 0 : -3;
            long long hi = (below_top || exceptional_group) ? t_min : t_min + 3;
            if (hi < lo) hi = lo; // exceptional strata force [0, t_min] nonempty on valid inputs
            if (!exceptional_group && !below_top && rng() % 10 == 0) {
                for (int i : group) p.values[i] = ExtInt::neg_inf();
            } else if (!exceptional_group && below_top && rng() % 12 == 0) {
                for (int i : group) p.values[i] = ExtInt::neg_inf();
            } else {
                long long b = lo + static_cast<long long>(rng() % (hi - lo + 1));
                for (int i : group) p.values[i] = ExtInt::fin(b);
            }
        }
    }
    return p;
}

std::string perversity_to_string(const Stratification& strat, const Perversity& p) {
    std::string out;
    for (size_t i = 0; i < strat.strata().size(); ++i) {
        if (strat.strata()[i].regular) continue;
        if (!out.empty()) out += " ";
        out += strat.strata()[i].id + "=" + p.values[i].to_string();
    }
    return out.empty() ? "(no singular strata)" : out;
}

} // namespace stratum
