// Test-only oracles, independent of the library's scan machinery.
//
// For the rotation family A = diag-blocks a_j I2 with symmetry angles
// theta_j, every index quantity reduces to exact counting: gamma(sigma)
// restricted to plane j is R(a_j sigma), so kernel crossings of
// gamma(sigma) - omega P happen exactly at a_j sigma = theta_j +- arg omega
// (mod 2pi), one count per matching branch. With all angles rational in
// turns, the counts are integer arithmetic; an infinitesimal tie-break
// models omega e^{+-i 0+} for splitting numbers.
#pragma once

#include <numeric>
#include <vector>

namespace oracle {

struct Frac {
    long long num = 0;
    long long den = 1;

    static Frac of(long long n, long long d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const long long g = std::gcd(n < 0 ? -n : n, d);
        return g ? Frac{n / g, d / g} : Frac{0, 1};
    }
    Frac operator+(const Frac& o) const { return of(num * o.den + o.num * den, den * o.den); }
    Frac operator-(const Frac& o) const { return of(num * o.den - o.num * den, den * o.den); }
    Frac operator*(const Frac& o) const { return of(num * o.num, den * o.den); }
    Frac operator-() const { return Frac{-num, den}; }
    bool operator==(const Frac& o) const { return num * o.den == o.num * den; }
    bool operator<(const Frac& o) const { return num * o.den < o.num * den; }
    bool is_integer() const { return den == 1; }
    long long floor() const {
        long long q = num / den;
        if (num % den != 0 && num < 0) --q;
        return q;
    }
    // fractional part in [0, 1)
    Frac mod1() const { return *this - Frac{floor(), 1}; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// #{sigma in (0, s) : a sigma = c (mod 1 turn)}, all in turns; a > 0.
// tb displaces c by tb * 0+.
inline long count_crossings(const Frac& speed_turns, const Frac& c_turns, const Frac& s,
                            int tb) {
    // sigma = (c + m)/a in (0, s)  <=>  -c < m < a s - c, with c -> c + tb 0+.
    // Shift both bounds by -c: integers m with lo < m < hi where
    // lo = -c - tb 0+, hi = a s - c - tb 0+.
    const Frac lo = -c_turns;
    const Frac hi = speed_turns * s - c_turns;
    long long m_min, m_max;
    if (lo.is_integer())
        m_min = lo.floor() + ((tb > 0) ? 0 : 1);  // m > lo - tb 0+
    else
        m_min = lo.floor() + 1;
    if (hi.is_integer())
        m_max = hi.floor() - ((tb < 0) ? 0 : 1);  // m < hi - tb 0+
    else
        m_max = hi.floor();
    return static_cast<long>(m_max >= m_min ? m_max - m_min + 1 : 0);
}

struct RotationFamily {
    std::vector<Frac> thetas;  // symmetry angles, in turns
    std::vector<Frac> speeds;  // a_j, in turns per unit time
};

// nu_omega(P^{-1}) by angle matching; omega = w turns (exact), tb != 0 never matches.
inline long nu_base(const RotationFamily& fam, const Frac& w, int tb) {
    if (tb != 0) return 0;
    long c = 0;
    for (const Frac& th : fam.thetas) {
        if ((th - w).mod1() == Frac{0, 1}) ++c;
        if ((th + w).mod1() == Frac{0, 1}) ++c;
    }
    return c;
}

// i_omega^P over (0, s): base term plus interior crossing branches.
inline long maslov_index(const RotationFamily& fam, const Frac& w, const Frac& s, int tb = 0) {
    long total = nu_base(fam, w, tb);
    for (size_t j = 0; j < fam.thetas.size(); ++j) {
        total += count_crossings(fam.speeds[j], (fam.thetas[j] + w).mod1(), s, tb);
        total += count_crossings(fam.speeds[j], (fam.thetas[j] - w).mod1(), s, -tb);
    }
    return total;
}

inline long ekeland_index(const RotationFamily& fam, const Frac& s) {
    // i_P^E = i_1^P - nu_1(P^{-1}), and nu_1(P^{-1}) = 0 when no theta = 0.
    return maslov_index(fam, Frac{0, 1}, s, 0);
}

// _P S_M^{+-}(omega) for M = gamma(s) of the family.
inline std::pair<long, long> splitting(const RotationFamily& fam, const Frac& w,
                                       const Frac& s) {
    const long base = maslov_index(fam, w, s, 0);
    return {maslov_index(fam, w, s, +1) - base, maslov_index(fam, w, s, -1) - base};
}

}  // namespace oracle
