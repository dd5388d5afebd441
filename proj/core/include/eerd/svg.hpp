#ifndef EERD_SVG_HPP
#define EERD_SVG_HPP

#include <string>

#include "eerd/simulator.hpp"

namespace eerd {

/// Semilog plot of the measured relative entropy H(t) against the
/// predicted envelope H0 exp(-t/(C1 C2)).
std::string svg_decay_plot(const Trajectory& traj, double predicted_rate);

/// Two stacked panels: relative energy drift and absolute charge drift.
std::string svg_conservation_plot(const Trajectory& traj);

}  // namespace eerd

#endif
