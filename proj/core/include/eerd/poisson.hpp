#ifndef EERD_POISSON_HPP
#define EERD_POISSON_HPP

#include "eerd/grid.hpp"

namespace eerd {

/// Solves -div(eps grad psi) = p - n with zero boundary flux and zero
/// mean. Requires charge compatibility |integral(n - p)| within
/// round-off of the field scale; throws std::invalid_argument otherwise.
CellField solve_poisson(const Grid& g, const CellField& n, const CellField& p);

/// Poisson solve for a raw zero-mean source s = p - n.
CellField solve_poisson_source(const Grid& g, const CellField& source);

}  // namespace eerd

#endif
