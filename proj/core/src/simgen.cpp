#include "wnrank/simgen.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "wnrank/rng.hpp"

namespace wnrank {

namespace {

constexpr std::uint64_t kTagMixing = 0x6d697869ULL;  // stream tag for the mixing matrix

double signed_cbrt(double v) { return std::cbrt(v); }

std::vector<double> draw_innovation_matrix(Innovation innovation, int n, int p,
                                           std::mt19937_64& engine) {
    // Row-major (time-major) buffer: row t occupies [t*p, (t+1)*p).
    std::vector<double> z(static_cast<std::size_t>(n) * p);
    switch (innovation) {
        case Innovation::Gaussian: {
            std::normal_distribution<double> normal(0.0, 1.0);
            for (auto& v : z) v = normal(engine);
            break;
        }
        case Innovation::CubeRootNormal: {
            std::normal_distribution<double> normal(0.0, 1.0);
            for (auto& v : z) v = signed_cbrt(normal(engine));
            break;
        }
        case Innovation::CubedNormal: {
            std::normal_distribution<double> normal(0.0, 1.0);
            for (auto& v : z) {
                const double w = normal(engine);
                v = w * w * w;
            }
            break;
        }
        case Innovation::ScaledT3: {
            std::student_t_distribution<double> t3(3.0);
            const double scale = 1.0 / std::sqrt(3.0);
            for (auto& v : z) v = t3(engine) * scale;
            break;
        }
    }
    return z;
}

std::vector<double> draw_uniform_mixing(int p, std::mt19937_64& engine) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> a(static_cast<std::size_t>(p) * p);
    for (auto& v : a) v = unif(engine);
    return a;
}

// dst_row = A * src_row for row-major p-vectors.
void apply_matrix(const std::vector<double>& a, int p, const double* src, double* dst) {
    for (int i = 0; i < p; ++i) {
        double acc = 0.0;
        const double* row = a.data() + static_cast<std::size_t>(i) * p;
        for (int j = 0; j < p; ++j) acc += row[j] * src[j];
        dst[i] = acc;
    }
}

// Sparse variant for the alternative models: only the k0 x k0 block of A is
// nonzero, so only the first k0 coordinates of dst are touched.
void apply_block(const std::vector<double>& a, int p, int k0, const double* src, double* dst) {
    for (int i = 0; i < k0; ++i) {
        double acc = 0.0;
        const double* row = a.data() + static_cast<std::size_t>(i) * p;
        for (int j = 0; j < k0; ++j) acc += row[j] * src[j];
        dst[i] = acc;
    }
    for (int i = k0; i < p; ++i) dst[i] = 0.0;
}

enum class Link { Identity, Sin, SinCubeRoot, CubeRoot };

Link link_for_form(int form) {
    switch ((form - 1) % 4) {
        case 0: return Link::Identity;
        case 1: return Link::Sin;
        case 2: return Link::SinCubeRoot;
        default: return Link::CubeRoot;
    }
}

void apply_link(Link link, double* v, int count) {
    constexpr double two_thirds_pi = 2.0 * std::numbers::pi / 3.0;
    constexpr double third_pi = std::numbers::pi / 3.0;
    switch (link) {
        case Link::Identity:
            break;
        case Link::Sin:
            for (int i = 0; i < count; ++i) v[i] = std::sin(two_thirds_pi * v[i]);
            break;
        case Link::SinCubeRoot:
            for (int i = 0; i < count; ++i) v[i] = std::sin(third_pi * signed_cbrt(v[i]));
            break;
        case Link::CubeRoot:
            for (int i = 0; i < count; ++i) v[i] = signed_cbrt(v[i]);
            break;
    }
}

// Ids are case-sensitive: lowercase roman numerals are the null models,
// uppercase the alternatives. This catches mode/model mix-ups early.
int roman_to_form(const std::string& id) {
    static const char* kRoman[] = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII"};
    for (int f = 1; f <= 8; ++f) {
        if (id == kRoman[f - 1]) return f;
    }
    throw InvalidInput("unknown alternative model id '" + id + "' (expected I..VIII)");
}

}  // namespace

NullModelSpec null_model_from_id(const std::string& id, int n, int p, std::uint64_t seed) {
    static const char* kRoman[] = {"i", "ii", "iii", "iv", "v", "vi", "vii", "viii"};
    for (int f = 0; f < 8; ++f) {
        if (id == kRoman[f]) {
            NullModelSpec spec;
            spec.mixing = f < 4 ? Mixing::Toeplitz : Mixing::Uniform;
            spec.innovation = static_cast<Innovation>(f % 4);
            spec.n = n;
            spec.p = p;
            spec.seed = seed;
            return spec;
        }
    }
    throw InvalidInput("unknown null model id '" + id + "' (expected i..viii)");
}

std::string null_model_id(const NullModelSpec& spec) {
    static const char* kRoman[] = {"i", "ii", "iii", "iv", "v", "vi", "vii", "viii"};
    const int f = (spec.mixing == Mixing::Toeplitz ? 0 : 4) + static_cast<int>(spec.innovation);
    return kRoman[f];
}

AltModelSpec alt_model_from_id(const std::string& id, double rho, int k0, int n, int p,
                               std::uint64_t seed) {
    AltModelSpec spec;
    spec.form = roman_to_form(id);
    spec.rho = rho;
    spec.k0 = k0;
    spec.n = n;
    spec.p = p;
    spec.seed = seed;
    return spec;
}

std::string alt_model_id(const AltModelSpec& spec) {
    static const char* kRoman[] = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII"};
    return kRoman[spec.form - 1];
}

std::vector<double> sigma_half(int p) {
    if (p < 1) {
        throw InvalidInput("sigma_half: p must be >= 1");
    }
    Eigen::MatrixXd sigma(p, p);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            sigma(i, j) = std::pow(0.5, std::abs(i - j));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sigma);
    Eigen::VectorXd clamped = solver.eigenvalues().cwiseMax(1e-12).cwiseSqrt();
    Eigen::MatrixXd root =
        solver.eigenvectors() * clamped.asDiagonal() * solver.eigenvectors().transpose();

    std::vector<double> out(static_cast<std::size_t>(p) * p);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            out[static_cast<std::size_t>(i) * p + j] = root(i, j);
        }
    }
    return out;
}

SeriesPanel gen_null(const NullModelSpec& spec) {
    const int n = spec.n;
    const int p = spec.p;
    auto engine = make_engine(spec.seed);

    std::vector<double> a;
    if (spec.mixing == Mixing::Toeplitz) {
        a = sigma_half(p);
    } else {
        auto mix_engine = make_engine(derive_seed(spec.seed, {kTagMixing}));
        a = draw_uniform_mixing(p, mix_engine);
    }

    const std::vector<double> z = draw_innovation_matrix(spec.innovation, n, p, engine);
    std::vector<double> data(static_cast<std::size_t>(n) * p);
    std::vector<double> eps(p);
    for (int t = 0; t < n; ++t) {
        apply_matrix(a, p, z.data() + static_cast<std::size_t>(t) * p, eps.data());
        for (int c = 0; c < p; ++c) {
            data[static_cast<std::size_t>(c) * n + t] = eps[c];
        }
    }
    return SeriesPanel(n, p, std::move(data));
}

SeriesPanel gen_alt(const AltModelSpec& spec, Warnings* warnings) {
    const int n = spec.n;
    const int p = spec.p;
    const int k0 = spec.k0;
    if (k0 < 1 || k0 > p) {
        throw InvalidInput("gen_alt: k0 must lie in 1..p");
    }
    if (spec.rho < 0.0) {
        throw InvalidInput("gen_alt: rho must be >= 0");
    }
    const bool autoregressive = spec.form <= 4;
    const Link link = link_for_form(spec.form);

    auto engine = make_engine(spec.seed);

    // Coefficient matrix: U(-rho, rho) on the leading k0 x k0 block.
    std::vector<double> a(static_cast<std::size_t>(p) * p, 0.0);
    {
        auto a_engine = spec.fixed_a_seed ? make_engine(*spec.fixed_a_seed)
                                          : make_engine(derive_seed(spec.seed, {kTagMixing}));
        std::uniform_real_distribution<double> unif(-spec.rho, spec.rho);
        for (int i = 0; i < k0; ++i) {
            for (int j = 0; j < k0; ++j) {
                a[static_cast<std::size_t>(i) * p + j] = unif(a_engine);
            }
        }
    }

    if (autoregressive && warnings) {
        Eigen::MatrixXd block(k0, k0);
        for (int i = 0; i < k0; ++i) {
            for (int j = 0; j < k0; ++j) block(i, j) = a[static_cast<std::size_t>(i) * p + j];
        }
        const double radius = block.eigenvalues().cwiseAbs().maxCoeff();
        if (radius >= 1.0) {
            warnings->push_back("autoregressive coefficient matrix has spectral radius " +
                                std::to_string(radius) + " >= 1; trajectory may diverge");
        }
    }

    const int burn = autoregressive ? spec.burn_in : 0;
    const int pre = autoregressive ? burn : 1;  // moving averages need z_0
    const int total = n + pre;
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<double> data(static_cast<std::size_t>(n) * p);
    std::vector<double> z_prev(p), z_cur(p), state(p, 0.0), driven(p);

    if (autoregressive) {
        for (int step = 0; step < total; ++step) {
            apply_block(a, p, k0, state.data(), driven.data());
            apply_link(link, driven.data(), k0);
            for (int c = 0; c < p; ++c) {
                state[c] = driven[c] + normal(engine);
            }
            const int t = step - burn;
            if (t >= 0) {
                for (int c = 0; c < p; ++c) {
                    const double v = state[c];
                    if (!std::isfinite(v)) {
                        throw DivergedModel("autoregressive trajectory diverged at step " +
                                            std::to_string(step));
                    }
                    data[static_cast<std::size_t>(c) * n + t] = v;
                }
            }
        }
    } else {
        for (int c = 0; c < p; ++c) z_prev[c] = normal(engine);
        for (int t = 0; t < n; ++t) {
            for (int c = 0; c < p; ++c) z_cur[c] = normal(engine);
            apply_block(a, p, k0, z_prev.data(), driven.data());
            apply_link(link, driven.data(), k0);
            for (int c = 0; c < p; ++c) {
                data[static_cast<std::size_t>(c) * n + t] = z_cur[c] + driven[c];
            }
            std::swap(z_prev, z_cur);
        }
    }
    return SeriesPanel(n, p, std::move(data));
}

}  // namespace wnrank
