#pragma once

// Robust sign evaluation for the 2D orientation and incircle determinants.
// Fast path uses a floating-point filter; when the filter cannot certify the
// sign, the determinant is re-evaluated exactly with nonoverlapping
// floating-point expansions (Shewchuk-style two_sum / two_product building
// blocks, fma-based).

namespace cdcpath::detail {

// Sign of det [bx-ax, by-ay; cx-ax, cy-ay]: +1 if (a,b,c) is counter-clockwise.
int orient2d_sign(double ax, double ay, double bx, double by, double cx, double cy);

// Sign of the incircle determinant for CCW triangle (a,b,c): +1 iff d lies
// strictly inside the circumcircle.
int incircle_sign(double ax, double ay, double bx, double by, double cx, double cy,
                  double dx, double dy);

} // namespace cdcpath::detail
