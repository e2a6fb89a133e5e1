#pragma once

#include "lowmach/fields.hpp"
#include "lowmach/theory.hpp"

#include <complex>
#include <string>
#include <vector>

namespace lowmach {

// Spectrum normalization convention used throughout: for a cell field c with
// fluctuation dc = c - <c>,
//     S(k) = dV * <|FFT(dc)|^2> / N_cells
// with an unnormalized forward DFT. An uncorrelated field with per-cell
// variance s^2 then has the flat spectrum s^2 dV, which makes the equilibrium
// result directly comparable to kB T/(rho mu_c).
struct SpectrumEstimate {
    std::vector<double> k;       // physical wavenumber 2 pi n / L
    std::vector<double> k_eff;   // modified wavenumber of the discrete Laplacian
    std::vector<double> mean;
    std::vector<double> stderr_; // independent-batch standard error
    long n_samples = 0;
};

enum class SpectrumAxis { kx, ky };

// Streaming accumulator for the full 2D static spectrum, batched for error
// bars. Batches must be independent (separate seeds or well-separated time
// windows).
class Spectrum2DAccumulator {
  public:
    Spectrum2DAccumulator(const Grid2D& g, int n_batches);
    ~Spectrum2DAccumulator();
    Spectrum2DAccumulator(const Spectrum2DAccumulator&) = delete;
    Spectrum2DAccumulator& operator=(const Spectrum2DAccumulator&) = delete;

    void add(const CellField& c, int batch);

    // batch-averaged spectrum at integer mode (nkx, nky)
    double mean_at(int nkx, int nky) const;
    double stderr_at(int nkx, int nky) const;
    long n_samples() const { return total_samples_; }
    int n_batches() const { return static_cast<int>(batch_count_.size()); }

    // 1D cut along an axis (modes 1..n/2), k_eff computed from the grid
    SpectrumEstimate axis(SpectrumAxis which) const;

    const Grid2D& grid() const { return grid_; }

  private:
    void finalize() const;

    Grid2D grid_;
    std::vector<std::vector<double>> batch_sum_;  // per batch, nx*ny power sums
    std::vector<long> batch_count_;
    long total_samples_ = 0;
    mutable std::vector<double> mean_, var_;
    mutable bool final_ = false;
    void* plan_ = nullptr;     // fftw plan
    void* work_ = nullptr;     // fftw_complex buffer
};

// 1D spectra of vertically averaged observables (c_v, h_c). The
// normalization dV * ny * |FFT_x|^2 / nx matches the 2D convention at
// k_y = 0, so the late-time S_c plateau equals the equilibrium kBT/(rho mu_c).
class Spectrum1DAccumulator {
  public:
    Spectrum1DAccumulator(const Grid2D& g, int n_batches);
    void add(const std::vector<double>& line, int batch);
    SpectrumEstimate result() const;

  private:
    Grid2D grid_;
    std::vector<std::vector<double>> batch_sum_;
    std::vector<long> batch_count_;
    long total_ = 0;
};

// static_spectrum over explicit snapshot batches (>= 2 batches for error bars)
SpectrumEstimate static_spectrum(const std::vector<std::vector<CellField>>& batches,
                                 SpectrumAxis axis);

// horizontal average rho1^(h)(y): row means
std::vector<double> horizontal_profile(const CellField& rho1);

struct ProfileEstimate {
    std::vector<double> y;
    std::vector<double> mean;
    std::vector<double> stderr_;
    long n_samples = 0;
};
ProfileEstimate profile_statistics(const Grid2D& g,
                                   const std::vector<std::vector<std::vector<double>>>& batches);

// c_v(x) = L^-1 int c dy and h_c(x) = L^-1 int y c dy (cell-center y)
struct InterfaceObservables {
    std::vector<double> c_v;
    std::vector<double> h_c;
};
InterfaceObservables interface_observables(const CellField& c);

// interface spectra from per-batch sample lists of (c_v or h_c) lines
SpectrumEstimate interface_spectrum(const Grid2D& g,
                                    const std::vector<std::vector<std::vector<double>>>& batches);

// complex mode amplitudes of a (periodic) field at integer modes, for
// dynamic-structure-factor time series
struct ModeIndex {
    int nkx = 0, nky = 0;
};
std::vector<std::complex<double>> cell_mode_amplitudes(const CellField& c,
                                                       const std::vector<ModeIndex>& modes);
std::vector<std::complex<double>> node_mode_amplitudes(const NodeField& f,
                                                       const std::vector<ModeIndex>& modes);

// per-k temporal periodogram; series[t][mode], uniformly sampled at dt_samp.
// Folded to omega >= 0 and averaged over n_batches contiguous batches.
struct DynamicStructureFactor {
    std::vector<double> omega;
    std::vector<std::vector<double>> S;  // [mode][omega]
};
DynamicStructureFactor dynamic_structure_factor(
    const std::vector<std::vector<std::complex<double>>>& series, double dt_samp, int n_batches);

struct LorentzianFit {
    double amplitude = 0.0;  // A in A/(w^2 + Gamma^2) + B
    double gamma = 0.0;      // half width at half maximum
    double offset = 0.0;     // B
    double residual = 0.0;   // rms of the final misfit
    bool converged = false;
};
LorentzianFit lorentzian_fit(const std::vector<double>& omega, const std::vector<double>& S);

// CSV writers (columns documented in the README)
void write_spectrum_csv(const std::string& path, const SpectrumEstimate& s);
void write_profile_csv(const std::string& path, const ProfileEstimate& p);
void write_dsf_csv(const std::string& path, const std::vector<double>& k,
                   const DynamicStructureFactor& dsf);

}  // namespace lowmach
