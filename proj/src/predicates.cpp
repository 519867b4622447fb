#include "predicates.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

namespace cdcpath::detail {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon() / 2.0; // 2^-53
const double kOrientErrBound = (3.0 + 16.0 * kEps) * kEps;
const double kIncircleErrBound = (10.0 + 96.0 * kEps) * kEps;

// An expansion is a sum of doubles with strictly increasing magnitude and
// nonoverlapping bits; the represented value is the exact sum of components.
using Expansion = std::vector<double>;

inline void two_sum(double a, double b, double& hi, double& lo) {
    hi = a + b;
    const double bv = hi - a;
    const double av = hi - bv;
    lo = (a - av) + (b - bv);
}

inline void two_product(double a, double b, double& hi, double& lo) {
    hi = a * b;
    lo = std::fma(a, b, -hi);
}

Expansion from_product(double a, double b) {
    double hi, lo;
    two_product(a, b, hi, lo);
    Expansion e;
    if (lo != 0.0)
        e.push_back(lo);
    if (hi != 0.0)
        e.push_back(hi);
    return e;
}

// Exact sum of two expansions (fast expansion sum with zero elimination).
Expansion add(const Expansion& e, const Expansion& f) {
    Expansion h;
    h.reserve(e.size() + f.size());
    std::size_t i = 0, j = 0;
    double q = 0.0;
    // Merge by magnitude, accumulating with exact two_sum steps.
    auto next = [&]() {
        if (i < e.size() && (j >= f.size() || std::abs(e[i]) <= std::abs(f[j])))
            return e[i++];
        return f[j++];
    };
    std::size_t total = e.size() + f.size();
    if (total == 0)
        return h;
    q = next();
    for (std::size_t k = 1; k < total; ++k) {
        double hi, lo;
        two_sum(q, next(), hi, lo);
        if (lo != 0.0)
            h.push_back(lo);
        q = hi;
    }
    if (q != 0.0)
        h.push_back(q);
    return h;
}

Expansion negate(Expansion e) {
    for (double& c : e)
        c = -c;
    return e;
}

// Exact product of an expansion by a single double (scale with zero elim).
Expansion scale(const Expansion& e, double b) {
    Expansion h;
    if (e.empty() || b == 0.0)
        return h;
    h.reserve(2 * e.size());
    double q, lo;
    two_product(e[0], b, q, lo);
    if (lo != 0.0)
        h.push_back(lo);
    for (std::size_t i = 1; i < e.size(); ++i) {
        double t1, t0;
        two_product(e[i], b, t1, t0);
        double s1, s0;
        two_sum(q, t0, s1, s0);
        if (s0 != 0.0)
            h.push_back(s0);
        two_sum(t1, s1, q, s0);
        if (s0 != 0.0)
            h.push_back(s0);
    }
    if (q != 0.0)
        h.push_back(q);
    return h;
}

Expansion mul(const Expansion& e, const Expansion& f) {
    Expansion acc;
    for (double c : f)
        acc = add(acc, scale(e, c));
    return acc;
}

int sign_of(const Expansion& e) {
    if (e.empty())
        return 0;
    const double last = e.back(); // largest-magnitude component decides
    return last > 0.0 ? 1 : -1;
}

// Exact 2x2 minor px*qy - py*qx as an expansion.
Expansion minor2(double px, double py, double qx, double qy) {
    return add(from_product(px, qy), negate(from_product(py, qx)));
}

int orient2d_exact(double ax, double ay, double bx, double by, double cx, double cy) {
    Expansion det = minor2(ax, ay, bx, by);
    det = add(det, minor2(bx, by, cx, cy));
    det = add(det, minor2(cx, cy, ax, ay));
    return sign_of(det);
}

int incircle_exact(double ax, double ay, double bx, double by, double cx, double cy,
                   double dx, double dy) {
    const Expansion ab = minor2(ax, ay, bx, by);
    const Expansion bc = minor2(bx, by, cx, cy);
    const Expansion cd = minor2(cx, cy, dx, dy);
    const Expansion da = minor2(dx, dy, ax, ay);
    const Expansion ac = minor2(ax, ay, cx, cy);
    const Expansion bd = minor2(bx, by, dx, dy);

    // 3x3 minors O(p,q,r) = |px py 1; qx qy 1; rx ry 1| of the lifted matrix.
    const Expansion m_bcd = add(add(bc, cd), negate(bd));
    const Expansion m_acd = add(add(ac, cd), da);
    const Expansion m_abd = add(add(ab, bd), da);
    const Expansion m_abc = add(add(ab, bc), negate(ac));

    auto lift = [](double x, double y) { return add(from_product(x, x), from_product(y, y)); };

    // Cofactor expansion along the lift column:
    // det = lift_a*O(b,c,d) - lift_b*O(a,c,d) + lift_c*O(a,b,d) - lift_d*O(a,b,c)
    Expansion det = mul(lift(ax, ay), m_bcd);
    det = add(det, negate(mul(lift(bx, by), m_acd)));
    det = add(det, mul(lift(cx, cy), m_abd));
    det = add(det, negate(mul(lift(dx, dy), m_abc)));
    return sign_of(det);
}

} // namespace

int orient2d_sign(double ax, double ay, double bx, double by, double cx, double cy) {
    const double detleft = (ax - cx) * (by - cy);
    const double detright = (ay - cy) * (bx - cx);
    const double det = detleft - detright;

    double detsum;
    if (detleft > 0.0) {
        if (detright <= 0.0)
            return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
        detsum = detleft + detright;
    } else if (detleft < 0.0) {
        if (detright >= 0.0)
            return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
        detsum = -detleft - detright;
    } else {
        return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
    }

    const double errbound = kOrientErrBound * detsum;
    if (det > errbound)
        return 1;
    if (-det > errbound)
        return -1;
    return orient2d_exact(ax, ay, bx, by, cx, cy);
}

int incircle_sign(double ax, double ay, double bx, double by, double cx, double cy,
                  double dx, double dy) {
    const double adx = ax - dx, ady = ay - dy;
    const double bdx = bx - dx, bdy = by - dy;
    const double cdx = cx - dx, cdy = cy - dy;

    const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    const double alift = adx * adx + ady * ady;
    const double cdxady = cdx * ady, adxcdy = adx * cdy;
    const double blift = bdx * bdx + bdy * bdy;
    const double adxbdy = adx * bdy, bdxady = bdx * ady;
    const double clift = cdx * cdx + cdy * cdy;

    const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) +
                       clift * (adxbdy - bdxady);

    const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                             (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                             (std::abs(adxbdy) + std::abs(bdxady)) * clift;
    const double errbound = kIncircleErrBound * permanent;
    if (det > errbound)
        return 1;
    if (-det > errbound)
        return -1;
    return incircle_exact(ax, ay, bx, by, cx, cy, dx, dy);
}

} // namespace cdcpath::detail
