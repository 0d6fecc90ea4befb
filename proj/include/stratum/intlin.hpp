#pragma once
// Exact integer linear algebra: Smith normal form, Hermite-style kernels,
// lattice solves, a fraction-free rank oracle, and the arbitrary-precision
// fallback used when 64-bit arithmetic overflows.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stratum/error.hpp"

namespace stratum {

// Internal control-flow signal: a machine-word computation left the
// representable range and must be redone with BigInt.
struct OverflowSignal {};

// ---------------------------------------------------------------------------
// BigInt: sign-magnitude arbitrary precision integer, base 2^32.

class BigInt {
public:
    BigInt() : sign_(0) {}
    BigInt(long long v);

    static BigInt from_string(const std::string& s);

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }

    BigInt operator-() const;
    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;
    // Truncated division (C semantics): quotient rounds toward zero.
    BigInt operator/(const BigInt& o) const;
    BigInt operator%(const BigInt& o) const;

    BigInt& operator+=(const BigInt& o) { *this = *this + o; return *this; }
    BigInt& operator-=(const BigInt& o) { *this = *this - o; return *this; }
    BigInt& operator*=(const BigInt& o) { *this = *this * o; return *this; }

    bool operator==(const BigInt& o) const { return cmp(o) == 0; }
    bool operator!=(const BigInt& o) const { return cmp(o) != 0; }
    bool operator<(const BigInt& o) const { return cmp(o) < 0; }
    bool operator<=(const BigInt& o) const { return cmp(o) <= 0; }
    bool operator>(const BigInt& o) const { return cmp(o) > 0; }
    bool operator>=(const BigInt& o) const { return cmp(o) >= 0; }

    BigInt abs() const;
    std::string to_string() const;
    // Throws on values outside long long range.
    long long to_int64() const;
    bool fits_int64() const;

private:
    int sign_; // -1, 0, +1
    std::vector<uint32_t> mag_; // little-endian base 2^32, no leading zeros

    int cmp(const BigInt& o) const;
    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r);
    void trim();
};

// ---------------------------------------------------------------------------
// Checked 64-bit integer: arithmetic raises OverflowSignal instead of wrapping.

struct Cint {
    long long v = 0;
    Cint() = default;
    Cint(long long x) : v(x) {}

    bool is_zero() const { return v == 0; }

    Cint operator-() const;
    Cint operator+(Cint o) const;
    Cint operator-(Cint o) const;
    Cint operator*(Cint o) const;
    Cint operator/(Cint o) const;
    Cint operator%(Cint o) const;
    Cint& operator+=(Cint o) { *this = *this + o; return *this; }
    Cint& operator-=(Cint o) { *this = *this - o; return *this; }
    Cint& operator*=(Cint o) { *this = *this * o; return *this; }

    bool operator==(Cint o) const { return v == o.v; }
    bool operator!=(Cint o) const { return v != o.v; }
    bool operator<(Cint o) const { return v < o.v; }
    bool operator<=(Cint o) const { return v <= o.v; }
    bool operator>(Cint o) const { return v > o.v; }
    bool operator>=(Cint o) const { return v >= o.v; }

    Cint abs() const;
    std::string to_string() const { return std::to_string(v); }
};

// ---------------------------------------------------------------------------
// Dense matrices, row-major.

template <typename I>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<I> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, I(0)) {}

    I& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const I& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

using IMat = Mat<long long>;

Mat<Cint> to_cint(const IMat& m);
Mat<BigInt> to_big(const IMat& m);
IMat from_cint(const Mat<Cint>& m);

// Smith normal form invariant factors (positive, divisibility-ordered,
// trivial 1s included). Runs the 64-bit fast path first, falls back to
// BigInt on overflow. Factors that do not fit 64 bits abort with
// OverflowPolicy unless collected through snf_invariants_big.
std::vector<long long> snf_invariants(const IMat& m);
std::vector<BigInt> snf_invariants_big(const Mat<BigInt>& m);

int rank_of(const IMat& m); // rank over Q, via the SNF path

// Basis of the integer kernel {x : Mx = 0}, as matrix columns. The basis
// spans the full kernel lattice (saturated subgroup of Z^cols).
IMat kernel_basis(const IMat& m);

// Solve B X = Y over the integers, all columns at once. Returns nullopt if
// some column of Y is not in the column lattice of B.
std::optional<IMat> solve_in_lattice(const IMat& b, const IMat& y);

IMat mat_mul(const IMat& a, const IMat& b);
IMat hstack(const IMat& a, const IMat& b);

// Basis of the lattice generated by the columns (column-echelon survivors).
IMat lattice_column_basis(const IMat& m);

// Independent rank oracle: Bareiss fraction-free elimination over BigInt.
// Shares no code with the SNF/HNF path.
int bareiss_rank(const IMat& m);

// Finite-field elimination (p prime, p <= 97).
int rank_mod_p(const IMat& m, int p);
IMat kernel_basis_mod_p(const IMat& m, int p);

long long gcd_ll(long long a, long long b);

} // namespace stratum
