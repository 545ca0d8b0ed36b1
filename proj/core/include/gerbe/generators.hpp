#pragma once

#include "gerbe/complex.hpp"

namespace gerbe {

/// Freudenthal (Kuhn) triangulation of the unit n-cube with opposite faces
/// identified: res^n vertices and n! * res^n top simplices. Needs res >= 3;
/// coarser grids identify distinct simplices.
SimplicialComplex generate_flat_torus(int n, int res);

/// Closed orientable surface of genus g from the 4g-gon with side word
/// a1 b1 a1^-1 b1^-1 ..., each side split in three, the interior coned off
/// through an inner ring. Barycentrically subdivided `res` times.
SimplicialComplex generate_genus_surface(int g, int res = 0);

/// Boundary of the standard (n+1)-simplex.
SimplicialComplex generate_sphere(int n);

/// Real projective 3-space: the Kuhn-triangulated boundary of [-r, r]^4
/// modulo the antipodal map. H_1 = Z/2, so it is the torsion fixture. Needs r >= 2.
SimplicialComplex generate_projective_space(int r);

}  // namespace gerbe
