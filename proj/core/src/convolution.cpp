#include "phasespace/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include <fftw3.h>

#include "phasespace/numerics.hpp"

namespace phasespace {

namespace {

int reach_points(double h) {
    return static_cast<int>(std::ceil(kKernelReach / h));
}

// Samples of h·√(2/π)e^{-2u²} at u = d·h, d = -r..r. Each axis pass
// integrates to one, so the product of two passes carries the (2/π) prefactor.
std::vector<double> kernel_taps(double h) {
    const int r = reach_points(h);
    std::vector<double> taps(static_cast<std::size_t>(2 * r + 1));
    for (int d = -r; d <= r; ++d) {
        const double u = d * h;
        taps[d + r] = h * std::sqrt(2.0 / kPi) * std::exp(-2.0 * u * u);
    }
    return taps;
}

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};

// Convolves strided lines of length n_in with symmetric taps, keeping the
// outputs for input positions crop .. n_in - crop - 1.
class LineConvolver {
public:
    LineConvolver(std::vector<double> taps, int n_in, int crop, ConvolutionMethod method)
        : taps_(std::move(taps)), r_(static_cast<int>(taps_.size() / 2)), n_in_(n_in), crop_(crop), method_(method) {
        if (method_ == ConvolutionMethod::Fft) init_fft();
    }
    ~LineConvolver() {
        if (forward_ != nullptr) fftw_destroy_plan(forward_);
        if (backward_ != nullptr) fftw_destroy_plan(backward_);
    }
    LineConvolver(const LineConvolver&) = delete;
    LineConvolver& operator=(const LineConvolver&) = delete;

    int n_out() const noexcept { return n_in_ - 2 * crop_; }

    void apply(const Complex* in, std::ptrdiff_t in_stride, Complex* out, std::ptrdiff_t out_stride) {
        if (method_ == ConvolutionMethod::Direct) {
            apply_direct(in, in_stride, out, out_stride);
        } else {
            apply_fft(in, in_stride, out, out_stride);
        }
    }

private:
    void apply_direct(const Complex* in, std::ptrdiff_t in_stride, Complex* out, std::ptrdiff_t out_stride) const {
        for (int i = 0; i < n_out(); ++i) {
            const int c = i + crop_;
            const int lo = std::max(0, c - r_);
            const int hi = std::min(n_in_ - 1, c + r_);
            Complex acc{};
            for (int m = lo; m <= hi; ++m) acc += taps_[m - c + r_] * in[m * in_stride];
            out[i * out_stride] = acc;
        }
    }

    void init_fft() {
        length_ = n_in_ + 2 * r_;
        kernel_.reset(static_cast<Complex*>(fftw_malloc(sizeof(Complex) * length_)));
        buffer_.reset(static_cast<Complex*>(fftw_malloc(sizeof(Complex) * length_)));
        auto* buf = reinterpret_cast<fftw_complex*>(buffer_.get());
        forward_ = fftw_plan_dft_1d(length_, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        backward_ = fftw_plan_dft_1d(length_, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        std::fill_n(buffer_.get(), length_, Complex{});
        for (std::size_t d = 0; d < taps_.size(); ++d) buffer_.get()[d] = taps_[d];
        fftw_execute(forward_);
        std::copy_n(buffer_.get(), length_, kernel_.get());
    }

    void apply_fft(const Complex* in, std::ptrdiff_t in_stride, Complex* out, std::ptrdiff_t out_stride) {
        Complex* buf = buffer_.get();
        std::fill_n(buf, length_, Complex{});
        for (int m = 0; m < n_in_; ++m) buf[m] = in[m * in_stride];
        fftw_execute(forward_);
        for (int t = 0; t < length_; ++t) buf[t] *= kernel_.get()[t];
        fftw_execute(backward_);
        // full linear convolution index of input position c is c + r
        const double scale = 1.0 / length_;
        for (int i = 0; i < n_out(); ++i) out[i * out_stride] = buf[i + crop_ + r_] * scale;
    }

    std::vector<double> taps_;
    int r_;
    int n_in_;
    int crop_;
    ConvolutionMethod method_;
    int length_ = 0;
    std::unique_ptr<Complex, FftwFree> kernel_;
    std::unique_ptr<Complex, FftwFree> buffer_;
    fftw_plan forward_ = nullptr;
    fftw_plan backward_ = nullptr;
};

GridSpec cropped(const GridSpec& in, int crop) {
    GridSpec g = in;
    g.x_min = in.x(crop);
    g.x_max = in.x(in.nx - 1 - crop);
    g.y_min = in.y(crop);
    g.y_max = in.y(in.ny - 1 - crop);
    g.nx = in.nx - 2 * crop;
    g.ny = in.ny - 2 * crop;
    return g;
}

Grid2D crop_grid(const Grid2D& in, int crop) {
    auto out = Grid2D::zeros(cropped(in.spec, crop));
    for (int i = 0; i < out.spec.nx; ++i) {
        for (int j = 0; j < out.spec.ny; ++j) out.at(i, j) = in.at(i + crop, j + crop);
    }
    return out;
}

} // namespace

int kernel_padding(const GridSpec& grid) {
    grid.validate();
    return std::max(reach_points(grid.dx()), reach_points(grid.dy()));
}

Grid2D gaussian_smooth(const Grid2D& field, int crop, ConvolutionMethod method, Warnings* warnings) {
    const auto& spec = field.spec;
    spec.validate();
    if (spec.semantics != AxisSemantics::AlphaPlane) {
        throw DomainError("phase-space convolutions act on alpha_plane grids");
    }
    if (crop < 0 || spec.nx - 2 * crop < 2 || spec.ny - 2 * crop < 2) {
        throw DomainError("crop of " + std::to_string(crop) + " points leaves fewer than 2 points per axis");
    }
    const double h = std::max(spec.dx(), spec.dy());
    if (h > 0.25) {
        std::ostringstream msg;
        msg << "aliasing: grid spacing " << h << " under-resolves the convolution kernel (width 0.5)";
        warn(warnings, msg.str());
    }

    const int nx_out = spec.nx - 2 * crop;
    const int ny_out = spec.ny - 2 * crop;

    // pass along x: (nx, ny) -> (nx_out, ny)
    std::vector<Complex> tmp(static_cast<std::size_t>(nx_out) * spec.ny);
    {
        LineConvolver conv(kernel_taps(spec.dx()), spec.nx, crop, method);
        for (int j = 0; j < spec.ny; ++j) conv.apply(field.values.data() + j, spec.ny, tmp.data() + j, spec.ny);
    }
    // pass along y: (nx_out, ny) -> (nx_out, ny_out)
    auto out = Grid2D::zeros(cropped(spec, crop));
    {
        LineConvolver conv(kernel_taps(spec.dy()), spec.ny, crop, method);
        for (int i = 0; i < nx_out; ++i) {
            conv.apply(tmp.data() + static_cast<std::size_t>(i) * spec.ny, 1,
                       out.values.data() + static_cast<std::size_t>(i) * ny_out, 1);
        }
    }
    return out;
}

Grid2D wigner_from_p(const Grid2D& p, int crop, ConvolutionMethod method, Warnings* warnings) {
    return gaussian_smooth(p, crop, method, warnings);
}

Grid2D wigner_from_p(const PlaneField& p, const GridSpec& out, ConvolutionMethod method, Warnings* warnings) {
    const int pad = kernel_padding(out);
    return gaussian_smooth(sample(out.padded(pad, pad), p), pad, method, warnings);
}

Grid2D wigner_from_p(const PRepresentation& rep, double sigma, const GridSpec& out, ConvolutionMethod method,
                     Warnings* warnings) {
    const double h = std::max(out.dx(), out.dy());
    if (sigma < 2.0 * h) {
        std::ostringstream msg;
        msg << "aliasing: P width sigma = " << sigma << " is below two grid spacings (" << 2.0 * h << ")";
        warn(warnings, msg.str());
    }
    return wigner_from_p([&](Complex a) { return p_regularized_eval(rep, sigma, a); }, out, method, warnings);
}

Grid2D q_from_wigner(const Grid2D& w, int crop, ConvolutionMethod method, Warnings* warnings) {
    return gaussian_smooth(w, crop, method, warnings);
}

TransformChain p_to_q_chain(const PlaneField& p, const GridSpec& out, ConvolutionMethod method,
                            Warnings* warnings) {
    const int pad = kernel_padding(out);
    const auto p_grid = sample(out.padded(2 * pad, 2 * pad), p);
    const auto w_wide = wigner_from_p(p_grid, pad, method, warnings);
    auto q = q_from_wigner(w_wide, pad, method, nullptr);
    return {crop_grid(w_wide, pad), std::move(q)};
}

} // namespace phasespace
