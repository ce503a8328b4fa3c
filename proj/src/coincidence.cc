// Copyright 2026 The mcphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mcphase/coincidence.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "mcphase/errors.h"
#include "mcphase/permanent.h"

namespace mcp {

namespace {

/// Neumaier-compensated complex accumulator.
class CompensatedSum {
   public:
    void add(Complex z) {
        add_part(re_, re_c_, z.real());
        add_part(im_, im_c_, z.imag());
    }
    Complex value() const { return {re_ + re_c_, im_ + im_c_}; }

   private:
    static void add_part(double &sum, double &comp, double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    double re_ = 0, re_c_ = 0, im_ = 0, im_c_ = 0;
};

double compensated_total(const std::vector<double> &xs) {
    CompensatedSum s;
    for (double x : xs) {
        s.add(Complex{x, 0.0});
    }
    return s.value().real();
}

/// Photon-to-port assignments with a nonzero amplitude. photon_at[k] is the
/// photon (0-based) detected at the k-th port of eta.
struct Assignments {
    size_t n = 0;
    std::vector<uint8_t> photon_at;  // n entries per assignment
    std::vector<Complex> amplitude;

    size_t count() const { return amplitude.size(); }
    const uint8_t *row(size_t a) const { return photon_at.data() + a * n; }
};

void check_shapes(const ScatteringMatrix &u, const InputConfig &v, const OutputConfig &eta) {
    if (v.photons() != eta.size()) {
        throw ValidationError("input and output configurations have different photon numbers");
    }
    if (v.photons() == 0) {
        throw ValidationError("configurations must contain at least one photon");
    }
    if (v.photons() > 64) {
        throw ValidationError("too many photons");
    }
    v.check_modes(u.modes());
    for (int p : eta.ports()) {
        if (p < 1 || static_cast<size_t>(p) > u.modes()) {
            std::ostringstream ss;
            ss << "output port " << p << " outside [1.." << u.modes() << "]";
            throw ValidationError(ss.str());
        }
    }
}

// Depth-first over ports in order, photons in increasing label, so the list is
// lexicographic in photon_at.
Assignments surviving_assignments(const ComplexMatrix &sub, double threshold) {
    Assignments out;
    const auto n = static_cast<size_t>(sub.rows());
    out.n = n;
    std::vector<uint8_t> current(n);
    std::vector<bool> used(n, false);
    std::vector<Complex> partial(n + 1);
    partial[0] = 1.0;

    auto recurse = [&](auto &&self, size_t k) -> void {
        if (k == n) {
            out.photon_at.insert(out.photon_at.end(), current.begin(), current.end());
            out.amplitude.push_back(partial[n]);
            return;
        }
        for (size_t p = 0; p < n; ++p) {
            if (used[p]) {
                continue;
            }
            Complex entry = sub(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(p));
            if (std::abs(entry) <= threshold) {
                continue;
            }
            used[p] = true;
            current[k] = static_cast<uint8_t>(p);
            partial[k + 1] = partial[k] * entry;
            self(self, k + 1);
            used[p] = false;
        }
    };
    recurse(recurse, 0);
    return out;
}

/// Photon permutation σ = τ^-1 τ' relating two assignments, as 1-based images:
/// σ(j) = photon_at_a[position of j in b].
Permutation relative_permutation(const uint8_t *a, const uint8_t *b, size_t n) {
    std::vector<int> img(n);
    for (size_t k = 0; k < n; ++k) {
        img[b[k]] = a[k] + 1;
    }
    return Permutation(std::move(img));
}

}  // namespace

UnitarityDefect unitarity_defect(const ComplexMatrix &m) {
    UnitarityDefect d;
    if (m.rows() != m.cols()) {
        d.max_deviation = INFINITY;
        return d;
    }
    ComplexMatrix e = m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < e.rows(); ++i) {
        for (Eigen::Index j = 0; j < e.cols(); ++j) {
            double x = std::abs(e(i, j));
            if (x > d.max_deviation) {
                d = {x, static_cast<size_t>(i), static_cast<size_t>(j)};
            }
        }
    }
    return d;
}

ScatteringMatrix validate_unitary(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        throw ValidationError("scattering matrix is not square");
    }
    if (m.rows() == 0) {
        throw ValidationError("scattering matrix is empty");
    }
    auto d = unitarity_defect(m);
    if (!(d.max_deviation <= tol)) {
        std::ostringstream ss;
        ss << "matrix is not unitary: entry (" << d.row + 1 << "," << d.col + 1 << ") of U^dagger U - I has modulus "
           << d.max_deviation << " > " << tol;
        throw ValidationError(ss.str());
    }
    return ScatteringMatrix(m);
}

InputConfig::InputConfig(std::vector<int> ports) : ports_(std::move(ports)) {
    if (ports_.empty()) {
        throw ValidationError("input configuration has no photons");
    }
    std::vector<int> sorted = ports_;
    std::sort(sorted.begin(), sorted.end());
    for (size_t k = 0; k < sorted.size(); ++k) {
        if (sorted[k] < 1) {
            throw ValidationError("input ports are 1-based");
        }
        if (k > 0 && sorted[k] == sorted[k - 1]) {
            throw ValidationError("input configuration has two photons in port " + std::to_string(sorted[k]));
        }
    }
}

void InputConfig::check_modes(size_t m) const {
    for (int p : ports_) {
        if (static_cast<size_t>(p) > m) {
            std::ostringstream ss;
            ss << "input port " << p << " outside [1.." << m << "]";
            throw ValidationError(ss.str());
        }
    }
}

OutputConfig::OutputConfig(std::vector<int> ports) : ports_(std::move(ports)) {
    std::sort(ports_.begin(), ports_.end());
    for (size_t k = 0; k < ports_.size(); ++k) {
        if (ports_[k] < 1) {
            throw ValidationError("output ports are 1-based");
        }
        if (k > 0 && ports_[k] == ports_[k - 1]) {
            throw ValidationError("output configuration is not collision-free (port " + std::to_string(ports_[k]) +
                                  ")");
        }
    }
}

bool OutputConfig::contains(int port) const {
    return std::binary_search(ports_.begin(), ports_.end(), port);
}

std::string OutputConfig::key() const {
    std::string s;
    for (size_t k = 0; k < ports_.size(); ++k) {
        if (k) {
            s += ',';
        }
        s += std::to_string(ports_[k]);
    }
    return s;
}

OutputConfig OutputConfig::parse(const std::string &key) {
    std::vector<int> ports;
    std::stringstream ss(key);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            int p = std::stoi(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
            ports.push_back(p);
        } catch (const std::logic_error &) {
            throw ValidationError("malformed configuration key '" + key + "'");
        }
    }
    if (ports.empty()) {
        throw ValidationError("empty configuration key");
    }
    return OutputConfig(std::move(ports));
}

std::vector<OutputConfig> collision_free_configs(size_t m, size_t n) {
    std::vector<OutputConfig> out;
    if (n > m) {
        return out;
    }
    std::vector<int> c(n);
    for (size_t k = 0; k < n; ++k) {
        c[k] = static_cast<int>(k + 1);
    }
    while (true) {
        out.emplace_back(c);
        // next combination
        size_t k = n;
        while (k > 0 && c[k - 1] == static_cast<int>(m - n + k)) {
            --k;
        }
        if (k == 0) {
            break;
        }
        ++c[k - 1];
        for (size_t j = k; j < n; ++j) {
            c[j] = c[j - 1] + 1;
        }
    }
    return out;
}

double CoincidenceReport::rate(const OutputConfig &eta) const {
    auto it = rates.find(eta);
    return it == rates.end() ? 0.0 : it->second.rate;
}

const RateEntry &CoincidenceReport::at(const OutputConfig &eta) const {
    auto it = rates.find(eta);
    if (it == rates.end()) {
        throw ValidationError("rate map is missing configuration " + eta.key());
    }
    return it->second;
}

double CoincidenceReport::total_rate() const {
    std::vector<double> xs;
    xs.reserve(rates.size());
    for (const auto &[eta, e] : rates) {
        xs.push_back(e.rate);
    }
    return compensated_total(xs);
}

ComplexMatrix transfer_submatrix(const ScatteringMatrix &u, const InputConfig &v, const OutputConfig &eta) {
    check_shapes(u, v, eta);
    const auto n = static_cast<Eigen::Index>(v.photons());
    ComplexMatrix sub(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index i = 0; i < n; ++i) {
            sub(k, i) = u(static_cast<size_t>(eta[static_cast<size_t>(k)] - 1),
                          static_cast<size_t>(v[static_cast<size_t>(i)] - 1));
        }
    }
    return sub;
}

RateResult coincidence_rate_detailed(const ScatteringMatrix &u, const GramMatrix &g, const InputConfig &v,
                                     const OutputConfig &eta, const EngineOptions &opts) {
    if (g.size() != v.photons()) {
        throw ValidationError("Gram matrix size does not match the photon number");
    }
    const ComplexMatrix sub = transfer_submatrix(u, v, eta);
    const Assignments as = surviving_assignments(sub, opts.support_threshold);
    const size_t n = as.n;

    std::vector<Complex> gram(n * n);
    for (size_t a = 0; a < n; ++a) {
        for (size_t b = 0; b < n; ++b) {
            gram[a * n + b] = g(a, b);
        }
    }

    CompensatedSum sum;
    for (size_t x = 0; x < as.count(); ++x) {
        const uint8_t *ra = as.row(x);
        const Complex left = std::conj(as.amplitude[x]);
        for (size_t y = 0; y < as.count(); ++y) {
            const uint8_t *rb = as.row(y);
            Complex overlap = 1.0;
            for (size_t k = 0; k < n; ++k) {
                overlap *= gram[ra[k] * n + rb[k]];
            }
            sum.add(left * as.amplitude[y] * overlap);
        }
    }
    const Complex c = sum.value();
    RateResult r;
    r.raw_real = c.real();
    r.im_residual = std::abs(c.imag());
    r.rate = std::max(0.0, c.real());
    if (r.im_residual > opts.imag_tolerance) {
        std::ostringstream ss;
        ss << "coincidence rate for " << eta.key() << " has imaginary residual " << r.im_residual;
        throw NumericalError(ss.str());
    }
    return r;
}

double coincidence_rate(const ScatteringMatrix &u, const GramMatrix &g, const InputConfig &v,
                        const OutputConfig &eta, const EngineOptions &opts) {
    return coincidence_rate_detailed(u, g, v, eta, opts).rate;
}

Complex coincidence_sum_with(const ScatteringMatrix &u, const InputConfig &v, const OutputConfig &eta,
                             const std::function<Complex(const Permutation &)> &overlap,
                             const EngineOptions &opts) {
    const ComplexMatrix sub = transfer_submatrix(u, v, eta);
    const Assignments as = surviving_assignments(sub, opts.support_threshold);
    CompensatedSum sum;
    for (size_t x = 0; x < as.count(); ++x) {
        for (size_t y = 0; y < as.count(); ++y) {
            Complex r = overlap(relative_permutation(as.row(x), as.row(y), as.n));
            sum.add(std::conj(as.amplitude[x]) * as.amplitude[y] * r);
        }
    }
    return sum.value();
}

Complex permutation_weight(const ScatteringMatrix &u, const InputConfig &v, const OutputConfig &eta,
                           const Permutation &sigma, const EngineOptions &opts) {
    if (sigma.size() != v.photons()) {
        throw ValidationError("permutation size does not match the photon number");
    }
    const ComplexMatrix sub = transfer_submatrix(u, v, eta);
    const Assignments as = surviving_assignments(sub, opts.support_threshold);
    const Permutation inv = sigma.inverse();
    const size_t n = as.n;
    CompensatedSum sum;
    // τ' = τσ places photon σ^-1(p) where τ placed photon p.
    for (size_t x = 0; x < as.count(); ++x) {
        const uint8_t *ra = as.row(x);
        Complex amp = 1.0;
        for (size_t k = 0; k < n; ++k) {
            const auto p = static_cast<Eigen::Index>(inv(ra[k] + 1) - 1);
            amp *= sub(static_cast<Eigen::Index>(k), p);
        }
        sum.add(std::conj(as.amplitude[x]) * amp);
    }
    return sum.value();
}

CoincidenceReport all_rates(const ScatteringMatrix &u, const GramMatrix &g, const InputConfig &v,
                            const EngineOptions &opts) {
    const size_t n = v.photons();
    if (n > opts.max_photons) {
        std::ostringstream ss;
        ss << "photon number " << n << " exceeds the configured cap " << opts.max_photons;
        throw ValidationError(ss.str());
    }
    v.check_modes(u.modes());
    const std::vector<OutputConfig> configs = collision_free_configs(u.modes(), n);
    std::vector<RateResult> results(configs.size());

    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<size_t>(threads, std::max<size_t>(1, configs.size())));

    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](unsigned t) {
        try {
            for (size_t k = t; k < configs.size(); k += threads) {
                results[k] = coincidence_rate_detailed(u, g, v, configs[k], opts);
            }
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(work, t);
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    CoincidenceReport report;
    report.photons = n;
    report.modes = u.modes();
    std::vector<double> rates;
    rates.reserve(configs.size());
    for (size_t k = 0; k < configs.size(); ++k) {
        report.rates.emplace(configs[k], RateEntry{results[k].rate, results[k].im_residual, std::nullopt});
        rates.push_back(results[k].rate);
    }
    double discard = 1.0 - compensated_total(rates);
    if (discard < -1e-9) {
        throw NumericalError("coincidence rates sum above 1 (discard mass " + std::to_string(discard) + ")");
    }
    report.discard_mass = std::max(0.0, discard);
    return report;
}

double indistinguishable_oracle(const ScatteringMatrix &u, const InputConfig &v, const OutputConfig &eta) {
    return std::norm(ryser_permanent(transfer_submatrix(u, v, eta)));
}

double distinguishable_oracle(const ScatteringMatrix &u, const InputConfig &v, const OutputConfig &eta) {
    return ryser_permanent(Eigen::MatrixXd(transfer_submatrix(u, v, eta).cwiseAbs2()));
}

}  // namespace mcp
