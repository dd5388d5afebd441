#ifndef EERD_FUNCTIONALS_HPP
#define EERD_FUNCTIONALS_HPP

#include "eerd/equilibrium.hpp"
#include "eerd/grid.hpp"
#include "eerd/model.hpp"
#include "eerd/state.hpp"

namespace eerd {

/// Entropy density sigma(u) + n log w(u) - lambda(n) + p log w(u) - lambda(p)
/// with the Boltzmann function lambda. Requires n, p >= 0 and u > 0.
double entropy_density(double n, double p, double u, const ModelFunctions& m);

double total_entropy(const State& s, const ModelFunctions& m, const Grid& g);

/// Field energy plus internal energy, with the Dirichlet part evaluated
/// as (1/2) h sum eps_face (grad psi)^2 on the self-consistent potential.
double total_energy(const State& s, const Grid& g);

/// integral of (-n + p).
double total_charge(const State& s, const Grid& g);

/// R = F(n,p,u) (w(u)^2 - n p).
double reaction(double n, double p, double u, const ModelFunctions& m);

/// Reactive entropy dissipation F (np - w^2) log(np / w^2) >= 0.
/// Throws std::domain_error at np = 0 where the term diverges.
double reactive_entropy_term(double n, double p, double u, const ModelFunctions& m);

// Relative entropy in its cancellation-free form: four individually
// nonnegative groups. boltzmann_term integrates w(u) lambda(c/w(u)) for
// both species; weight_term and sigma_term are the negated Taylor
// remainders of w and sigma at u_inf; field_term is the weighted
// potential energy (1/(2 theta_inf)) int eps |grad psi|^2.
struct RelativeEntropyTerms {
  double boltzmann_term;
  double weight_term;
  double sigma_term;
  double field_term;
  double total() const { return boltzmann_term + weight_term + sigma_term + field_term; }
};

RelativeEntropyTerms relative_entropy_terms(const State& s, const Equilibrium& eq,
                                            const ModelFunctions& m, const Grid& g);
RelativeEntropyTerms relative_entropy_terms(const State& s, const DerivedFields& d,
                                            const Equilibrium& eq,
                                            const ModelFunctions& m, const Grid& g);

double relative_entropy(const State& s, const Equilibrium& eq,
                        const ModelFunctions& m, const Grid& g);

// Entropy production split into its four nonnegative summands: the
// reactive cell term and the three weighted squared-gradient face terms
// (electrons, holes, energy).
struct EntropyProductionTerms {
  double reactive;
  double particle_n;
  double particle_p;
  double energy;
  double total() const { return reactive + particle_n + particle_p + energy; }
};

EntropyProductionTerms entropy_production_terms(const State& s, const ModelFunctions& m,
                                                const Grid& g);
EntropyProductionTerms entropy_production_terms(const State& s, const DerivedFields& d,
                                                const ModelFunctions& m, const Grid& g);

double entropy_production(const State& s, const ModelFunctions& m, const Grid& g);
double entropy_production(const State& s, const DerivedFields& d,
                          const ModelFunctions& m, const Grid& g);

/// Algebraically equivalent expansion of the entropy production with the
/// explicit cross term -2 int (w'/w)(grad n + grad p) . grad u; agrees
/// with entropy_production to round-off when built from the same face
/// averages.
double entropy_production_recast(const State& s, const ModelFunctions& m, const Grid& g);
double entropy_production_recast(const State& s, const DerivedFields& d,
                                 const ModelFunctions& m, const Grid& g);

/// Right-hand side of the dissipative lower bound: reactive term plus
/// (1/2 - g_w) weighted drift-diffusion, energy-gradient, and potential
/// terms, each damped by eps/eps_max.
double dissipative_lower_bound_rhs(const State& s, const ModelFunctions& m,
                                   const Grid& g, const WeightGrowthConstants& wc);
double dissipative_lower_bound_rhs(const State& s, const DerivedFields& d,
                                   const ModelFunctions& m, const Grid& g,
                                   const WeightGrowthConstants& wc);

/// int gamma^{-1} |grad(1/theta)|^2, bounded by 2 P for two species.
double inv_temp_gradient_functional(const State& s, const ModelFunctions& m,
                                    const Grid& g);
double inv_temp_gradient_functional(const State& s, const DerivedFields& d,
                                    const ModelFunctions& m, const Grid& g);

/// Field energy plus internal energy from a precomputed potential.
double total_energy(const State& s, const DerivedFields& d, const Grid& g);

struct FunctionalReport {
  double S_total;
  double E_total;
  double Q_total;
  double H;
  double P;
  double P_recast;
  double reactive_term;
  double dissipative_lb;
  double inv_temp_grad;
};

FunctionalReport functional_report(const State& s, const Equilibrium& eq,
                                   const ModelFunctions& m, const Grid& g,
                                   const WeightGrowthConstants& wc);

}  // namespace eerd

#endif
