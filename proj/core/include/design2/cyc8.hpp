#pragma once

#include <complex>
#include <cstdint>

namespace design2 {

// Element of Z[zeta] for zeta = exp(i pi/4): c0 + c1 zeta + c2 zeta^2 +
// c3 zeta^3, with zeta^4 = -1. Contains i = zeta^2 and sqrt(2) =
// zeta - zeta^3; amplitudes of Clifford+CS circuits live in this ring up
// to a global power of 1/sqrt(2).
struct Cyc8 {
    std::int64_t c[4] = {0, 0, 0, 0};

    static Cyc8 from_int(std::int64_t v) { return Cyc8{{v, 0, 0, 0}}; }
    static Cyc8 i() { return Cyc8{{0, 0, 1, 0}}; }
    static Cyc8 sqrt2() { return Cyc8{{0, 1, 0, -1}}; }

    bool is_zero() const { return !c[0] && !c[1] && !c[2] && !c[3]; }
    bool operator==(const Cyc8&) const = default;

    Cyc8 operator+(const Cyc8& o) const {
        return Cyc8{{c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2], c[3] + o.c[3]}};
    }
    Cyc8 operator-(const Cyc8& o) const {
        return Cyc8{{c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2], c[3] - o.c[3]}};
    }
    Cyc8 operator-() const { return Cyc8{{-c[0], -c[1], -c[2], -c[3]}}; }

    Cyc8 operator*(const Cyc8& o) const {
        Cyc8 r;
        for (int a = 0; a < 4; ++a) {
            if (!c[a]) continue;
            for (int b = 0; b < 4; ++b) {
                int k = a + b;
                std::int64_t v = c[a] * o.c[b];
                if (k >= 4) {
                    k -= 4;
                    v = -v;
                }
                r.c[k] += v;
            }
        }
        return r;
    }

    // multiply by i^k
    Cyc8 times_i_pow(unsigned k) const {
        Cyc8 r = *this;
        for (unsigned t = 0; t < (k & 3); ++t)
            r = Cyc8{{-r.c[2], -r.c[3], r.c[0], r.c[1]}};
        return r;
    }

    Cyc8 conj() const { return Cyc8{{c[0], -c[3], -c[2], -c[1]}}; }

    // true when this = sqrt(2) * w for some ring element w (written back)
    bool halve_sqrt2(Cyc8& out) const {
        // this * sqrt(2) has components (c1-c3, c0+c2, c1+c3, c2-c0);
        // dividing by 2 must stay integral
        if ((c[1] + c[3]) % 2 != 0 || (c[0] + c[2]) % 2 != 0) return false;
        out = Cyc8{{(c[1] - c[3]) / 2, (c[0] + c[2]) / 2, (c[1] + c[3]) / 2, (c[2] - c[0]) / 2}};
        return true;
    }

    std::complex<double> to_complex() const {
        const double h = 0.70710678118654752440;  // sqrt(2)/2
        return {c[0] + h * (c[1] - c[3]), c[2] + h * (c[1] + c[3])};
    }
};

}  // namespace design2
