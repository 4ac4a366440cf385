#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wnrank/panel.hpp"
#include "wnrank/scan.hpp"

namespace wnrank {

/// Innovation families for the null data generators.
enum class Innovation {
    Gaussian,        ///< standard normal
    CubeRootNormal,  ///< signed cube root of a standard normal
    CubedNormal,     ///< cube of a standard normal
    ScaledT3,        ///< t(3) / sqrt(3)
};

/// Column-mixing schemes for the null generators.
enum class Mixing {
    Toeplitz,  ///< A = Sigma^{1/2}, Sigma = (0.5^{|i-j|})
    Uniform,   ///< A with i.i.d. U(-1, 1) entries, drawn once per panel
};

/// Null model: epsilon_t = A z_t with i.i.d. innovations.
struct NullModelSpec {
    Innovation innovation = Innovation::Gaussian;
    Mixing mixing = Mixing::Toeplitz;
    int n = 100;
    int p = 30;
    std::uint64_t seed = 0;
};

/// Model ids "i" through "viii" map to (mixing, innovation) as: i-iv are
/// Toeplitz with innovations a-d, v-viii are uniform mixing with a-d.
NullModelSpec null_model_from_id(const std::string& id, int n, int p, std::uint64_t seed);
std::string null_model_id(const NullModelSpec& spec);

/// Serially dependent alternatives. Forms 1-4 are order-1 autoregressions
/// with the identity / sin / sin-of-cube-root / cube-root link, forms 5-8
/// the analogous two-term moving averages. The coefficient matrix A has
/// U(-rho, rho) entries on its leading k0 x k0 block and zeros elsewhere.
struct AltModelSpec {
    int form = 1;  ///< 1..8, parsed from roman numerals I..VIII
    double rho = 0.5;
    int k0 = 2;
    int n = 100;
    int p = 30;
    std::uint64_t seed = 0;
    int burn_in = 200;  ///< autoregressive forms only; start is the zero vector
    /// When set, A is drawn from this dedicated seed instead of the panel
    /// stream, so a whole Monte Carlo run shares one coefficient matrix.
    std::optional<std::uint64_t> fixed_a_seed;
};

AltModelSpec alt_model_from_id(const std::string& id, double rho, int k0, int n, int p,
                               std::uint64_t seed);
std::string alt_model_id(const AltModelSpec& spec);

/// Symmetric positive-definite square root of Sigma = (0.5^{|i-j|}), via
/// eigendecomposition with eigenvalues clamped at 1e-12.
std::vector<double> sigma_half(int p);

/// Draws a null panel. Deterministic in spec.seed.
SeriesPanel gen_null(const NullModelSpec& spec);

/// Draws an alternative panel. Deterministic in spec.seed. Appends a warning
/// when the spectral radius of A reaches 1 (autoregressive forms) and throws
/// DivergedModel if the trajectory leaves the finite range.
SeriesPanel gen_alt(const AltModelSpec& spec, Warnings* warnings = nullptr);

}  // namespace wnrank
