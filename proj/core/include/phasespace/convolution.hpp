#pragma once

#include "phasespace/errors.hpp"
#include "phasespace/grid.hpp"
#include "phasespace/quasiprob.hpp"

namespace phasespace {

enum class ConvolutionMethod { Direct, Fft };

/// Distance beyond which the kernel (2/π)e^{-2|u|²} is dropped (e^{-40.5}).
inline constexpr double kKernelReach = 4.5;

/// Lattice points needed on each side to keep kernel truncation off the output.
int kernel_padding(const GridSpec& grid);

/// (2/π)∬F(β)e^{-2|α-β|²}d²β over an AlphaPlane grid, applied as two 1D
/// passes. The result drops `crop` points on every side of the input lattice.
/// Warns when the lattice spacing exceeds 0.25 (kernel under-resolved).
Grid2D gaussian_smooth(const Grid2D& field, int crop, ConvolutionMethod method = ConvolutionMethod::Direct,
                       Warnings* warnings = nullptr);

/// W from a sampled P. The caller pads the input; `crop` trims it back.
Grid2D wigner_from_p(const Grid2D& p, int crop, ConvolutionMethod method = ConvolutionMethod::Direct,
                     Warnings* warnings = nullptr);

/// W on `out` from a smooth P field, sampled on out.padded(kernel_padding).
Grid2D wigner_from_p(const PlaneField& p, const GridSpec& out, ConvolutionMethod method = ConvolutionMethod::Direct,
                     Warnings* warnings = nullptr);

/// W on `out` from the σ-regularized P of a representation. Warns when
/// σ < 2 grid spacings.
Grid2D wigner_from_p(const PRepresentation& rep, double sigma, const GridSpec& out,
                     ConvolutionMethod method = ConvolutionMethod::Direct, Warnings* warnings = nullptr);

/// Q from a sampled W; same cropping contract as wigner_from_p.
Grid2D q_from_wigner(const Grid2D& w, int crop, ConvolutionMethod method = ConvolutionMethod::Direct,
                     Warnings* warnings = nullptr);

/// Both stages of the P → W → Q chain on one output lattice.
struct TransformChain {
    Grid2D wigner;
    Grid2D q;
};

/// P is sampled on out padded twice, W is kept on `out`, Q is produced on `out`.
TransformChain p_to_q_chain(const PlaneField& p, const GridSpec& out,
                            ConvolutionMethod method = ConvolutionMethod::Direct, Warnings* warnings = nullptr);

} // namespace phasespace
