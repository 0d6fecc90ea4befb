#include "stratum/intlin.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace stratum {

// ---------------------------------------------------------------------------
// BigInt

BigInt::BigInt(long long v) {
    if (v == 0) { sign_ = 0; return; }
    sign_ = v > 0 ? 1 : -1;
    unsigned long long u = v > 0 ? static_cast<unsigned long long>(v)
                                 : ~static_cast<unsigned long long>(v) + 1ULL;
    while (u) {
        mag_.push_back(static_cast<uint32_t>(u & 0xffffffffULL));
        u >>= 32;
    }
}

BigInt BigInt::from_string(const std::string& s) {
    BigInt r;
    size_t i = 0;
    int sign = 1;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        if (s[i] == '-') sign = -1;
        ++i;
    }
    if (i >= s.size()) fail("ParseError", "empty integer literal");
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') fail("ParseError", "bad integer literal: " + s);
        r = r * BigInt(10) + BigInt(s[i] - '0');
    }
    if (!r.is_zero() && sign < 0) r.sign_ = -1;
    return r;
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

int BigInt::cmp(const BigInt& o) const {
    if (sign_ != o.sign_) return sign_ < o.sign_ ? -1 : 1;
    if (sign_ == 0) return 0;
    int c = cmp_mag(mag_, o.mag_);
    return sign_ > 0 ? c : -c;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r;
    r.reserve(std::max(a.size(), b.size()) + 1);
    uint64_t carry = 0;
    for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        uint64_t s = carry;
        if (i < a.size()) s += a[i];
        if (i < b.size()) s += b[i];
        r.push_back(static_cast<uint32_t>(s & 0xffffffffULL));
        carry = s >> 32;
    }
    if (carry) r.push_back(static_cast<uint32_t>(carry));
    return r;
}

// requires a >= b
std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r;
    r.reserve(a.size());
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t s = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
        if (s < 0) { s += (1LL << 32); borrow = 1; } else borrow = 0;
        r.push_back(static_cast<uint32_t>(s));
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t cur = static_cast<uint64_t>(a[i]) * b[j] + r[i + j] + carry;
            r[i + j] = static_cast<uint32_t>(cur & 0xffffffffULL);
            carry = cur >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            uint64_t cur = r[k] + carry;
            r[k] = static_cast<uint32_t>(cur & 0xffffffffULL);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// Schoolbook long division on magnitudes, bit-shift normalized.
void BigInt::divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
    q.clear();
    r.clear();
    if (cmp_mag(a, b) < 0) { r = a; return; }
    if (b.size() == 1) {
        uint64_t d = b[0], rem = 0;
        q.assign(a.size(), 0);
        for (size_t i = a.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | a[i];
            q[i] = static_cast<uint32_t>(cur / d);
            rem = cur % d;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        if (rem) r.push_back(static_cast<uint32_t>(rem));
        return;
    }
    // normalize so the divisor's top limb has its high bit set
    int shift = 0;
    uint32_t top = b.back();
    while (!(top & 0x80000000u)) { top <<= 1; ++shift; }
    auto shl = [shift](const std::vector<uint32_t>& x) {
        if (shift == 0) return x;
        std::vector<uint32_t> y(x.size() + 1, 0);
        for (size_t i = 0; i < x.size(); ++i) {
            y[i] |= x[i] << shift;
            y[i + 1] = static_cast<uint32_t>((static_cast<uint64_t>(x[i]) << shift) >> 32);
        }
        while (!y.empty() && y.back() == 0) y.pop_back();
        return y;
    };
    std::vector<uint32_t> u = shl(a), v = shl(b);
    size_t n = v.size(), m = u.size() - n;
    u.push_back(0);
    q.assign(m + 1, 0);
    for (size_t j = m + 1; j-- > 0;) {
        uint64_t num = (static_cast<uint64_t>(u[j + n]) << 32) | u[j + n - 1];
        uint64_t qhat = num / v[n - 1];
        uint64_t rhat = num % v[n - 1];
        while (qhat >= (1ULL << 32) ||
               (n >= 2 && qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2]))) {
            --qhat;
            rhat += v[n - 1];
            if (rhat >= (1ULL << 32)) break;
        }
        // multiply-subtract
        int64_t borrow = 0;
        uint64_t carry = 0;
        for (size_t i = 0; i < n; ++i) {
            uint64_t p = qhat * v[i] + carry;
            carry = p >> 32;
            int64_t t = static_cast<int64_t>(u[i + j]) - borrow - static_cast<int64_t>(p & 0xffffffffULL);
            if (t < 0) { t += (1LL << 32); borrow = 1; } else borrow = 0;
            u[i + j] = static_cast<uint32_t>(t);
        }
        int64_t t = static_cast<int64_t>(u[j + n]) - borrow - static_cast<int64_t>(carry);
        if (t < 0) {
            // qhat was one too large; add back
            t += (1LL << 32);
            --qhat;
            uint64_t c2 = 0;
            for (size_t i = 0; i < n; ++i) {
                uint64_t s = static_cast<uint64_t>(u[i + j]) + v[i] + c2;
                u[i + j] = static_cast<uint32_t>(s & 0xffffffffULL);
                c2 = s >> 32;
            }
            t += static_cast<int64_t>(c2);
            t &= 0xffffffffLL;
        }
        u[j + n] = static_cast<uint32_t>(t);
        q[j] = static_cast<uint32_t>(qhat);
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    u.resize(n);
    if (shift) {
        for (size_t i = 0; i < u.size(); ++i) {
            uint32_t hi = (i + 1 < u.size()) ? u[i + 1] : 0;
            u[i] = (u[i] >> shift) | (hi << (32 - shift));
        }
    }
    while (!u.empty() && u.back() == 0) u.pop_back();
    r = u;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
    if (sign_ == 0) return o;
    if (o.sign_ == 0) return *this;
    BigInt r;
    if (sign_ == o.sign_) {
        r.mag_ = add_mag(mag_, o.mag_);
        r.sign_ = sign_;
    } else {
        int c = cmp_mag(mag_, o.mag_);
        if (c == 0) return BigInt();
        if (c > 0) { r.mag_ = sub_mag(mag_, o.mag_); r.sign_ = sign_; }
        else       { r.mag_ = sub_mag(o.mag_, mag_); r.sign_ = o.sign_; }
    }
    r.trim();
    return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
    BigInt r;
    if (sign_ == 0 || o.sign_ == 0) return r;
    r.mag_ = mul_mag(mag_, o.mag_);
    r.sign_ = sign_ * o.sign_;
    r.trim();
    return r;
}

BigInt BigInt::operator/(const BigInt& o) const {
    if (o.sign_ == 0) fail("DivisionByZero", "BigInt division by zero");
    std::vector<uint32_t> q, rm;
    divmod_mag(mag_, o.mag_, q, rm);
    BigInt r;
    r.mag_ = q;
    r.sign_ = q.empty() ? 0 : sign_ * o.sign_;
    return r;
}

BigInt BigInt::operator%(const BigInt& o) const {
    if (o.sign_ == 0) fail("DivisionByZero", "BigInt modulo by zero");
    std::vector<uint32_t> q, rm;
    divmod_mag(mag_, o.mag_, q, rm);
    BigInt r;
    r.mag_ = rm;
    r.sign_ = rm.empty() ? 0 : sign_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    std::vector<uint32_t> cur = mag_;
    std::vector<uint32_t> groups; // base 1e9, little-endian
    while (!cur.empty()) {
        uint64_t rem = 0;
        std::vector<uint32_t> q(cur.size(), 0);
        for (size_t i = cur.size(); i-- > 0;) {
            uint64_t x = (rem << 32) | cur[i];
            q[i] = static_cast<uint32_t>(x / 1000000000ULL);
            rem = x % 1000000000ULL;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        groups.push_back(static_cast<uint32_t>(rem));
        cur = q;
    }
    std::string s = std::to_string(groups.back());
    for (size_t i = groups.size() - 1; i-- > 0;) {
        std::string part = std::to_string(groups[i]);
        s += std::string(9 - part.size(), '0') + part;
    }
    return (sign_ < 0 ? "-" : "") + s;
}

bool BigInt::fits_int64() const {
    static const BigInt lo(std::numeric_limits<long long>::min());
    static const BigInt hi(std::numeric_limits<long long>::max());
    return *this >= lo && *this <= hi;
}

long long BigInt::to_int64() const {
    if (!fits_int64()) fail("OverflowPolicy", "value exceeds 64-bit range: " + to_string());
    long long r = 0;
    for (size_t i = mag_.size(); i-- > 0;) r = (r << 32) | mag_[i];
    return sign_ < 0 ? -r : r;
}

// ---------------------------------------------------------------------------
// Checked 64-bit arithmetic

Cint Cint::operator-() const {
    if (v == std::numeric_limits<long long>::min()) throw OverflowSignal{};
    return Cint(-v);
}
Cint Cint::operator+(Cint o) const {
    long long r;
    if (__builtin_add_overflow(v, o.v, &r)) throw OverflowSignal{};
    return Cint(r);
}
Cint Cint::operator-(Cint o) const {
    long long r;
    if (__builtin_sub_overflow(v, o.v, &r)) throw OverflowSignal{};
    return Cint(r);
}
Cint Cint::operator*(Cint o) const {
    long long r;
    if (__builtin_mul_overflow(v, o.v, &r)) throw OverflowSignal{};
    return Cint(r);
}
Cint Cint::operator/(Cint o) const {
    if (o.v == 0) fail("DivisionByZero", "integer division by zero");
    if (v == std::numeric_limits<long long>::min() && o.v == -1) throw OverflowSignal{};
    return Cint(v / o.v);
}
Cint Cint::operator%(Cint o) const {
    if (o.v == 0) fail("DivisionByZero", "integer modulo by zero");
    if (v == std::numeric_limits<long long>::min() && o.v == -1) throw OverflowSignal{};
    return Cint(v % o.v);
}
Cint Cint::abs() const {
    if (v == std::numeric_limits<long long>::min()) throw OverflowSignal{};
    return Cint(v < 0 ? -v : v);
}

// ---------------------------------------------------------------------------
// Conversions

Mat<Cint> to_cint(const IMat& m) {
    Mat<Cint> r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = Cint(m.a[i]);
    return r;
}

Mat<BigInt> to_big(const IMat& m) {
    Mat<BigInt> r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = BigInt(m.a[i]);
    return r;
}

IMat from_cint(const Mat<Cint>& m) {
    IMat r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i].v;
    return r;
}

// ---------------------------------------------------------------------------
// Smith normal form (templated core)

namespace {

template <typename I>
I t_gcd(I a, I b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
        I t = a % b;
        a = b;
        b = t;
    }
    return a;
}

template <typename I>
void swap_rows(Mat<I>& m, int r1, int r2) {
    if (r1 == r2) return;
    for (int c = 0; c < m.cols; ++c) std::swap(m.at(r1, c), m.at(r2, c));
}

template <typename I>
void swap_cols(Mat<I>& m, int c1, int c2) {
    if (c1 == c2) return;
    for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, c1), m.at(r, c2));
}

template <typename I>
std::vector<I> t_snf(Mat<I> m) {
    int t = 0;
    int lim = std::min(m.rows, m.cols);
    while (t < lim) {
        // locate the smallest-magnitude nonzero entry in the trailing block
        int pr = -1, pc = -1;
        for (int r = t; r < m.rows; ++r)
            for (int c = t; c < m.cols; ++c)
                if (!m.at(r, c).is_zero()) {
                    if (pr < 0 || m.at(r, c).abs() < m.at(pr, pc).abs()) { pr = r; pc = c; }
                }
        if (pr < 0) break;
        swap_rows(m, t, pr);
        swap_cols(m, t, pc);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int r = t + 1; r < m.rows; ++r) {
                if (m.at(r, t).is_zero()) continue;
                I q = m.at(r, t) / m.at(t, t);
                if (!q.is_zero())
                    for (int c = t; c < m.cols; ++c) m.at(r, c) -= q * m.at(t, c);
                if (!m.at(r, t).is_zero()) { swap_rows(m, t, r); clean = false; }
            }
            for (int c = t + 1; c < m.cols; ++c) {
                if (m.at(t, c).is_zero()) continue;
                I q = m.at(t, c) / m.at(t, t);
                if (!q.is_zero())
                    for (int r = t; r < m.rows; ++r) m.at(r, c) -= q * m.at(r, t);
                if (!m.at(t, c).is_zero()) { swap_cols(m, t, c); clean = false; }
            }
            if (clean) {
                // enforce divisibility of the trailing block by the pivot
                for (int r = t + 1; r < m.rows && clean; ++r)
                    for (int c = t + 1; c < m.cols && clean; ++c)
                        if (!(m.at(r, c) % m.at(t, t)).is_zero()) {
                            for (int cc = t; cc < m.cols; ++cc) m.at(t, cc) += m.at(r, cc);
                            clean = false;
                        }
            }
        }
        ++t;
    }
    std::vector<I> diag;
    for (int i = 0; i < t; ++i) diag.push_back(m.at(i, i).abs());
    // normalize into a divisibility chain
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < diag.size(); ++i) {
            if (diag[i].is_zero() || (diag[i + 1] % diag[i]).is_zero()) continue;
            I g = t_gcd(diag[i], diag[i + 1]);
            I l = (diag[i] / g) * diag[i + 1];
            diag[i] = g;
            diag[i + 1] = l.abs();
            changed = true;
        }
    }
    return diag;
}

// Column-style Hermite reduction with transform tracking. After the loop the
// columns of the transform matching all-zero reduced columns span the kernel.
template <typename I>
void column_echelon(Mat<I>& m, Mat<I>& transform, int& pivot_cols) {
    int cursor = 0;
    for (int row = 0; row < m.rows && cursor < m.cols; ++row) {
        while (true) {
            int best = -1;
            for (int c = cursor; c < m.cols; ++c)
                if (!m.at(row, c).is_zero())
                    if (best < 0 || m.at(row, c).abs() < m.at(row, best).abs()) best = c;
            if (best < 0) break;
            swap_cols(m, cursor, best);
            swap_cols(transform, cursor, best);
            bool done = true;
            for (int c = cursor + 1; c < m.cols; ++c) {
                if (m.at(row, c).is_zero()) continue;
                I q = m.at(row, c) / m.at(row, cursor);
                if (!q.is_zero()) {
                    for (int r = 0; r < m.rows; ++r) m.at(r, c) -= q * m.at(r, cursor);
                    for (int r = 0; r < transform.rows; ++r)
                        transform.at(r, c) -= q * transform.at(r, cursor);
                }
                if (!m.at(row, c).is_zero()) done = false;
            }
            if (done) { ++cursor; break; }
        }
    }
    pivot_cols = cursor;
}

template <typename I>
Mat<I> t_kernel(Mat<I> m) {
    Mat<I> transform(m.cols, m.cols);
    for (int i = 0; i < m.cols; ++i) transform.at(i, i) = I(1);
    int pivots = 0;
    column_echelon(m, transform, pivots);
    Mat<I> ker(m.cols, m.cols - pivots);
    for (int c = pivots; c < m.cols; ++c)
        for (int r = 0; r < m.cols; ++r) ker.at(r, c - pivots) = transform.at(r, c);
    return ker;
}

template <typename I>
std::optional<Mat<I>> t_solve(Mat<I> b, const Mat<I>& y) {
    if (b.rows != y.rows) fail("ShapeMismatch", "solve_in_lattice shape mismatch");
    Mat<I> transform(b.cols, b.cols);
    for (int i = 0; i < b.cols; ++i) transform.at(i, i) = I(1);
    int pivots = 0;
    column_echelon(b, transform, pivots);
    // pivot row of each echelon column
    std::vector<int> pivot_row(pivots, -1);
    for (int c = 0, r = 0; c < pivots; ++c) {
        while (r < b.rows && b.at(r, c).is_zero()) ++r;
        if (r >= b.rows) return std::nullopt; // defensive; cannot happen
        pivot_row[c] = r;
    }
    Mat<I> z(b.cols, y.cols);
    for (int ycol = 0; ycol < y.cols; ++ycol) {
        std::vector<I> rem(b.rows);
        for (int r = 0; r < b.rows; ++r) rem[r] = y.at(r, ycol);
        for (int c = 0; c < pivots; ++c) {
            int r = pivot_row[c];
            if ((rem[r] % b.at(r, c)).is_zero() == false) return std::nullopt;
            I q = rem[r] / b.at(r, c);
            if (!q.is_zero())
                for (int rr = 0; rr < b.rows; ++rr) rem[rr] -= q * b.at(rr, c);
            z.at(c, ycol) = q;
        }
        for (int r = 0; r < b.rows; ++r)
            if (!rem[r].is_zero()) return std::nullopt;
    }
    // x = transform * z
    Mat<I> x(b.cols, y.cols);
    for (int r = 0; r < b.cols; ++r)
        for (int c = 0; c < y.cols; ++c) {
            I s(0);
            for (int k = 0; k < b.cols; ++k) s += transform.at(r, k) * z.at(k, c);
            x.at(r, c) = s;
        }
    return x;
}

} // namespace

std::vector<BigInt> snf_invariants_big(const Mat<BigInt>& m) { return t_snf(m); }

std::vector<long long> snf_invariants(const IMat& m) {
    try {
        auto d = t_snf(to_cint(m));
        std::vector<long long> r;
        r.reserve(d.size());
        for (auto& x : d) r.push_back(x.v);
        return r;
    } catch (const OverflowSignal&) {
        auto d = t_snf(to_big(m));
        std::vector<long long> r;
        r.reserve(d.size());
        for (auto& x : d) r.push_back(x.to_int64());
        return r;
    }
}

int rank_of(const IMat& m) {
    auto d = snf_invariants(m);
    int r = 0;
    for (auto x : d)
        if (x != 0) ++r;
    return r;
}

IMat kernel_basis(const IMat& m) {
    try {
        return from_cint(t_kernel(to_cint(m)));
    } catch (const OverflowSignal&) {
        auto kb = t_kernel(to_big(m));
        IMat r(kb.rows, kb.cols);
        for (size_t i = 0; i < kb.a.size(); ++i) r.a[i] = kb.a[i].to_int64();
        return r;
    }
}

std::optional<IMat> solve_in_lattice(const IMat& b, const IMat& y) {
    try {
        auto x = t_solve(to_cint(b), to_cint(y));
        if (!x) return std::nullopt;
        return from_cint(*x);
    } catch (const OverflowSignal&) {
        auto x = t_solve(to_big(b), to_big(y));
        if (!x) return std::nullopt;
        IMat r(x->rows, x->cols);
        for (size_t i = 0; i < x->a.size(); ++i) r.a[i] = x->a[i].to_int64();
        return r;
    }
}

IMat mat_mul(const IMat& a, const IMat& b) {
    if (a.cols != b.rows) fail("ShapeMismatch", "mat_mul shape mismatch");
    try {
        Mat<Cint> r(a.rows, b.cols);
        for (int i = 0; i < a.rows; ++i)
            for (int k = 0; k < a.cols; ++k) {
                if (a.at(i, k) == 0) continue;
                Cint aik(a.at(i, k));
                for (int j = 0; j < b.cols; ++j)
                    r.at(i, j) += aik * Cint(b.at(k, j));
            }
        return from_cint(r);
    } catch (const OverflowSignal&) {
        Mat<BigInt> r(a.rows, b.cols);
        for (int i = 0; i < a.rows; ++i)
            for (int k = 0; k < a.cols; ++k) {
                if (a.at(i, k) == 0) continue;
                BigInt aik(a.at(i, k));
                for (int j = 0; j < b.cols; ++j)
                    r.at(i, j) += aik * BigInt(b.at(k, j));
            }
        IMat out(r.rows, r.cols);
        for (size_t i = 0; i < r.a.size(); ++i) out.a[i] = r.a[i].to_int64();
        return out;
    }
}

IMat hstack(const IMat& a, const IMat& b) {
    if (a.rows != b.rows) fail("ShapeMismatch", "hstack shape mismatch");
    IMat r(a.rows, a.cols + b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) r.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols; ++j) r.at(i, a.cols + j) = b.at(i, j);
    }
    return r;
}

namespace {

template <typename I>
Mat<I> t_column_basis(Mat<I> m) {
    Mat<I> transform(m.cols, m.cols);
    for (int i = 0; i < m.cols; ++i) transform.at(i, i) = I(1);
    int pivots = 0;
    column_echelon(m, transform, pivots);
    Mat<I> basis(m.rows, pivots);
    for (int c = 0; c < pivots; ++c)
        for (int r = 0; r < m.rows; ++r) basis.at(r, c) = m.at(r, c);
    return basis;
}

} // namespace

IMat lattice_column_basis(const IMat& m) {
    try {
        return from_cint(t_column_basis(to_cint(m)));
    } catch (const OverflowSignal&) {
        auto b = t_column_basis(to_big(m));
        IMat r(b.rows, b.cols);
        for (size_t i = 0; i < b.a.size(); ++i) r.a[i] = b.a[i].to_int64();
        return r;
    }
}

// ---------------------------------------------------------------------------
// Bareiss fraction-free elimination (rank oracle)

int bareiss_rank(const IMat& im) {
    Mat<BigInt> m = to_big(im);
    int rank = 0;
    BigInt prev(1);
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < m.rows; ++r)
            if (!m.at(r, col).is_zero()) { pivot = r; break; }
        if (pivot < 0) continue;
        swap_rows(m, rank, pivot);
        for (int r = rank + 1; r < m.rows; ++r) {
            for (int c = col + 1; c < m.cols; ++c)
                m.at(r, c) = (m.at(rank, col) * m.at(r, c) - m.at(r, col) * m.at(rank, c)) / prev;
            m.at(r, col) = BigInt(0);
        }
        prev = m.at(rank, col);
        ++rank;
    }
    return rank;
}

// ---------------------------------------------------------------------------
// Mod-p elimination

namespace {

long long mod_norm(long long x, int p) {
    long long r = x % p;
    return r < 0 ? r + p : r;
}

long long mod_inv(long long a, int p) {
    long long r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

} // namespace

int rank_mod_p(const IMat& im, int p) {
    if (p < 2 || p > 97) fail("RingUnsupported", "prime out of range: " + std::to_string(p));
    IMat m = im;
    for (auto& x : m.a) x = mod_norm(x, p);
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < m.rows; ++r)
            if (m.at(r, col) != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        for (int c = 0; c < m.cols; ++c) std::swap(m.at(rank, c), m.at(pivot, c));
        long long inv = mod_inv(m.at(rank, col), p);
        for (int c = col; c < m.cols; ++c) m.at(rank, c) = m.at(rank, c) * inv % p;
        for (int r = 0; r < m.rows; ++r) {
            if (r == rank || m.at(r, col) == 0) continue;
            long long f = m.at(r, col);
            for (int c = col; c < m.cols; ++c)
                m.at(r, c) = mod_norm(m.at(r, c) - f * m.at(rank, c), p);
        }
        ++rank;
    }
    return rank;
}

IMat kernel_basis_mod_p(const IMat& im, int p) {
    if (p < 2 || p > 97) fail("RingUnsupported", "prime out of range: " + std::to_string(p));
    IMat m = im;
    for (auto& x : m.a) x = mod_norm(x, p);
    std::vector<int> pivot_of_col(m.cols, -1);
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < m.rows; ++r)
            if (m.at(r, col) != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        for (int c = 0; c < m.cols; ++c) std::swap(m.at(rank, c), m.at(pivot, c));
        long long inv = mod_inv(m.at(rank, col), p);
        for (int c = col; c < m.cols; ++c) m.at(rank, c) = m.at(rank, c) * inv % p;
        for (int r = 0; r < m.rows; ++r) {
            if (r == rank || m.at(r, col) == 0) continue;
            long long f = m.at(r, col);
            for (int c = col; c < m.cols; ++c)
                m.at(r, c) = mod_norm(m.at(r, c) - f * m.at(rank, c), p);
        }
        pivot_of_col[col] = rank;
        ++rank;
    }
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols; ++c)
        if (pivot_of_col[c] < 0) free_cols.push_back(c);
    IMat ker(m.cols, static_cast<int>(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        ker.at(fc, static_cast<int>(k)) = 1;
        for (int c = 0; c < m.cols; ++c) {
            int pr = pivot_of_col[c];
            if (pr >= 0) ker.at(c, static_cast<int>(k)) = mod_norm(-m.at(pr, fc), p);
        }
    }
    return ker;
}

long long gcd_ll(long long a, long long b) {
    a = std::llabs(a);
    b = std::llabs(b);
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace stratum
