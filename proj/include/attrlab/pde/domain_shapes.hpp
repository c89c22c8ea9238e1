#pragma once

#include <array>
#include <vector>

#include "attrlab/core/grid_domain.hpp"

namespace attrlab {

// Staircase masks for the standard experiment geometries. Truncation edges become
// Boundary cells, i.e. honest parts of the Dirichlet boundary.

DomainPtr make_annulus(double r_inner, double r_outer, double spacing);

// Axis-aligned rectangle (0, length) x (0, width); 1D when width <= 0.
DomainPtr make_strip(double length, double width, double spacing);

DomainPtr make_square(double side, double spacing);

// Two squares of the given side joined by a corridor (width x length), mid-height.
DomainPtr make_dumbbell(double square_side, double corridor_width, double corridor_length,
                        double spacing);

DomainPtr make_interval(double length, double spacing);

// Boundary data evaluators: a value per value-index, meaningful at Boundary cells.
std::vector<double> boundary_constant(const GridDomain& dom, double value);
std::vector<double> boundary_piecewise(const GridDomain& dom, int axis, double threshold,
                                       double low, double high);
// Fourier series in the polar angle around the bbox center, affinely normalized so the
// values attained on the boundary cells span exactly [lo, hi].
std::vector<double> boundary_fourier(const GridDomain& dom, double mean,
                                     const std::vector<std::array<double, 3>>& harmonics,
                                     double lo, double hi);

}  // namespace attrlab
