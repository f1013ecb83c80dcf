#pragma once

#include <memory>
#include <vector>

#include "gnt/geometry.hpp"

namespace gnt {

// Closed immersions with analytic jets and analytic normal frames.
//
// Sphere-type charts use polar angles on [0, pi] (Gauss-Legendre, so no node
// sits on a pole) followed by one periodic azimuth; the unit sphere point is
// (cos t1, sin t1 cos t2, ..., sin t1 ... sin t_{m-1} cos p, ... sin p).

// S^m of radius R in R^{m+1}, outward unit normal; A = -(1/R) I.
std::shared_ptr<const Immersion> round_sphere(int m, double radius);

// Product of circles of radii r_1..r_m in R^{2m} with the parallel frame
// nu^a = -(cos x_a, sin x_a) in block a; A_a = diag(0,..,1/r_a,..,0).
std::shared_ptr<const Immersion> flat_torus(std::vector<double> radii);

// (cos a cos x, cos a sin x, sin a cos y, sin a sin y) in S^3 with
// nu = (sin a cos x, sin a sin x, -cos a cos y, -cos a sin y);
// principal curvatures -tan a and cot a.
std::shared_ptr<const Immersion> clifford_torus(double angle);

// Star-shaped surface R (1 + amplitude f(w)) w in R^3 over the unit sphere,
// f = Re((x + i y)^k) + z^k with w = (z, x, y) in chart order; outward normal.
std::shared_ptr<const Immersion> bumpy_sphere(double radius, int harmonic, double amplitude);

// (r w, sqrt(1 - r^2)) in S^{m+1} with nu = (sqrt(1 - r^2) w, -r);
// A = -(sqrt(1 - r^2) / r) I, and r = 1 is a totally geodesic equator.
std::shared_ptr<const Immersion> small_sphere_in_sphere(int m, double r);

}  // namespace gnt
