#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tricycle {

enum class ReservoirLabel { c, h, p };

std::string_view to_string(ReservoirLabel label);

/// Position of each isothermal branch in per-cycle arrays.
enum BranchIndex : std::size_t { kCold = 0, kHot = 1, kAux = 2 };

struct Reservoir {
    ReservoirLabel label = ReservoirLabel::c;
    double temperature = 1.0;
    double beta = 1.0;  ///< 1 / (k_B T)

    static Reservoir make(ReservoirLabel label, double temperature, double kB = 1.0);
};

/// forward: delta [cos(pi s) + zeta]; reversed: delta [cos(pi (1 - s)) + zeta].
enum class Orientation { forward, reversed };

/// cosine is the physical schedule. frozen holds omega at delta*zeta and is
/// used for static reference branches.
enum class DriveMode { cosine, frozen };

struct BranchProtocol {
    Reservoir reservoir;
    double delta = 1.0;   ///< amplitude (frequency)
    double zeta = 2.0;    ///< displacement, > 1 keeps omega positive
    double tau = 1.0;     ///< duration
    Orientation orientation = Orientation::forward;
    double alpha = 0.0;   ///< spectral exponent, gamma = gamma0 * omega^alpha
    double gamma0 = 1.0;
    double hbar = 1.0;
    DriveMode drive = DriveMode::cosine;
};

struct CycleConfig {
    std::array<BranchProtocol, 3> branches;  ///< indexed by BranchIndex
    double hbar = 1.0;
    double kB = 1.0;

    const BranchProtocol& cold() const { return branches[kCold]; }
    const BranchProtocol& hot() const { return branches[kHot]; }
    const BranchProtocol& aux() const { return branches[kAux]; }
};

struct ClosedParameters {
    double zeta_p;
    double delta_h;
    double delta_p;
};

/// Amplitudes and displacement that make the three quenches map Gibbs state
/// onto Gibbs state. Throws DomainError on bad inputs or if zeta_p <= 1.
ClosedParameters close_parameters(double Tc, double Th, double Tp,
                                  double zeta_c, double zeta_h, double delta_c);

/// Independent inputs from which a closed cycle is built.
struct CycleSeeds {
    double Tc = 2.0;
    double Th = 6.0;
    double Tp = 2.4;
    double zeta_c = 2.0;
    double zeta_h = 2.0;
    double delta_c = 2.0;
    double hbar = 1.0;
    double kB = 1.0;
    double gamma0 = 1.0;
    double alpha = 0.8;
    double tau_c = 20.0;
    double tau_h = 20.0;
    double tau_p = 20.0;
    DriveMode drive = DriveMode::cosine;
};

/// gamma0 = kB = hbar = 1, delta_c = kB*Tc, zeta_c = zeta_h = 2, Th = 6, Tp = 2.4, Tc = 2.
CycleSeeds caption_defaults();

CycleConfig make_cycle(const CycleSeeds& seeds);

/// Copy of c with the three durations replaced.
CycleConfig with_durations(CycleConfig c, double tau_c, double tau_h, double tau_p);

/// Copy of c with alpha replaced on every branch.
CycleConfig with_alpha(CycleConfig c, double alpha);

/// Drive frequency at rescaled time s in [0,1]; DomainError outside.
double omega(const BranchProtocol& b, double s);

/// d omega / ds; DomainError outside [0,1].
double domega_ds(const BranchProtocol& b, double s);

namespace detail {
// Same schedules without the domain check; the cosine continues smoothly
// past the endpoints, which finite differences at s = 0, 1 rely on.
double omega_unchecked(const BranchProtocol& b, double s);
double domega_ds_unchecked(const BranchProtocol& b, double s);
}  // namespace detail

struct Diagnostic {
    std::string check;
    double magnitude;  ///< size of the violation (relative where applicable)
    std::string message;
};

/// Violated invariants of a cycle configuration; empty means valid.
std::vector<Diagnostic> validate_cycle(const CycleConfig& c);

}  // namespace tricycle
