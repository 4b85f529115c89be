#pragma once

// Catalog of built-in theories and steering scenarios. Construction may use
// floating point to pick which exact rational object to build (angles on the
// circle, sphere point layouts); everything stored and decided is exact.

#include <random>

#include "gptlab/steering.hpp"

namespace gptlab::presets {

StateSpace square_state_space();                // conv{(+-1, +-1)}
StateSpace diamond_state_space();               // edge midpoints of the square
StateSpace simplex_state_space(int n);          // conv{e_1..e_n} in R^n
StateSpace ngon_state_space(int n);             // rational n-gon on the unit circle
StateSpace pentagon_state_space();
StateSpace bloch_inner_polytope(int n);         // >= n rational sphere points, inscribed
StateSpace bloch_outer_polytope(int n);         // n tangent halfspaces, circumscribed

std::vector<Measurement> square_face_measurements();   // x and y direction
std::vector<Measurement> axis_measurements_3d();       // three orthogonal binary spins
Measurement simplex_basis_measurement(int n);

RestrictedTheory square_theory();
RestrictedTheory simplex_theory(int n);
RestrictedTheory square_in_square_theory();
RestrictedTheory triangle_in_ngon_theory(int n);
RestrictedTheory bloch_theory(int n, bool outer);

// PR-box state of two squares; the `minimal` reading re-expresses the same
// tensor with B's square embedded as a section of the tetrahedron, where the
// composite collapses to the separable one.
SteeringScenario square_tetra_pr_scenario(AmbientKind ambient);

// Noisy-singlet analog over Bloch-ball polytope approximations, with the three
// orthogonal binary measurements. K_A is always the inscribed polytope; K_B is
// inscribed or circumscribed according to `outer`.
SteeringScenario bloch_isotropic_scenario(const Rat& gamma, bool outer, int n);

// The same family's tensor over an already-built system; sweeps over gamma can
// reuse one system instead of rebuilding the polytopes per probe.
QMat isotropic_tensor(const BipartiteSystem& sys, const Rat& gamma);

// Largest gamma (exactly) for which the isotropic-analog tensor stays inside
// the maximal composite of the given scenario's factors.
Rat isotropic_validity_limit(const SteeringScenario& sc);

// Seeded random instances for agreement and hierarchy sweeps. Raw engine draws
// only, so streams are identical across platforms.
RestrictedTheory random_restricted_theory(std::mt19937_64& rng);
// Rejection-samples until the scenario satisfies the spanning hypothesis the
// crosscheck needs.
SteeringScenario random_full_dimensional_scenario(std::mt19937_64& rng);

struct ParsedPreset {
    std::string name;
    std::vector<std::string> args;
};
ParsedPreset parse_preset_name(const std::string& text);

bool is_theory_preset(const std::string& name);
bool is_scenario_preset(const std::string& name);
RestrictedTheory theory_preset(const std::string& text);
SteeringScenario scenario_preset(const std::string& text,
                                 std::optional<AmbientKind> ambient_override = std::nullopt);

}  // namespace gptlab::presets
