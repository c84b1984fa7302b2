// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "etascan/construct.hpp"

namespace etascan {
namespace {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;

Mat4 zero() { return {{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}}; }

Mat4 identity() {
    Mat4 m = zero();
    for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
    return m;
}

Mat4 mul(const Mat4& a, const Mat4& b) {
    Mat4 c = zero();
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            for (int j = 0; j < 4; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

Mat4 transpose(const Mat4& a) {
    Mat4 t;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t[i][j] = a[j][i];
    return t;
}

Mat4 add(const Mat4& a, const Mat4& b) {
    Mat4 c;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c[i][j] = a[i][j] + b[i][j];
    return c;
}

Mat4 sub(const Mat4& a, const Mat4& b) {
    Mat4 c;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c[i][j] = a[i][j] - b[i][j];
    return c;
}

Vec4 mulv(const Mat4& a, const Vec4& x) {
    Vec4 y{0, 0, 0, 0};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) y[i] += a[i][j] * x[j];
    return y;
}

// Gauss-Jordan with partial pivoting; inputs here are well-conditioned SPD
// covariance predictions.
Mat4 inverse(Mat4 a) {
    Mat4 inv = identity();
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (a[pivot][col] == 0.0) {
            throw std::runtime_error("kalman_smooth: singular covariance");
        }
        std::swap(a[col], a[pivot]);
        std::swap(inv[col], inv[pivot]);
        const double scale = 1.0 / a[col][col];
        for (int j = 0; j < 4; ++j) {
            a[col][j] *= scale;
            inv[col][j] *= scale;
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (int j = 0; j < 4; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

double trace(const Mat4& a) { return a[0][0] + a[1][1] + a[2][2] + a[3][3]; }

// Constant-velocity transition over one step.
Mat4 transition() {
    Mat4 f = identity();
    f[0][2] = 1.0;
    f[1][3] = 1.0;
    return f;
}

}  // namespace

KalmanSmoothDetail kalman_smooth_detail(std::span<const GeoPoint> ordered,
                                        const KalmanParams& params) {
    const std::size_t n = ordered.size();
    if (n < 2) throw std::invalid_argument("kalman_smooth: need >= 2 points");
    for (const auto& p : ordered) {
        if (!std::isfinite(p.lat) || !std::isfinite(p.lon)) {
            throw std::invalid_argument("kalman_smooth: non-finite coordinate");
        }
    }
    if (!(params.process_noise > 0.0) || !(params.measurement_noise > 0.0)) {
        throw std::invalid_argument("kalman_smooth: noise variances must be positive");
    }

    const Mat4 f = transition();
    const Mat4 ft = transpose(f);
    Mat4 q = zero();
    for (int i = 0; i < 4; ++i) q[i][i] = params.process_noise;
    const double r = params.measurement_noise;

    std::vector<Vec4> x_filt(n), x_pred(n);
    std::vector<Mat4> p_filt(n), p_pred(n);

    // Initial state from the first two measurements; velocity prior variance
    // 2r reflects the difference of two measurements.
    x_filt[0] = {ordered[0].lat, ordered[0].lon, ordered[1].lat - ordered[0].lat,
                 ordered[1].lon - ordered[0].lon};
    p_filt[0] = zero();
    p_filt[0][0][0] = r;
    p_filt[0][1][1] = r;
    p_filt[0][2][2] = 2.0 * r;
    p_filt[0][3][3] = 2.0 * r;

    for (std::size_t t = 1; t < n; ++t) {
        x_pred[t] = mulv(f, x_filt[t - 1]);
        p_pred[t] = add(mul(mul(f, p_filt[t - 1]), ft), q);

        // Position-only measurement update; S is the 2x2 innovation covariance.
        const double y0 = ordered[t].lat - x_pred[t][0];
        const double y1 = ordered[t].lon - x_pred[t][1];
        const Mat4& pp = p_pred[t];
        const double s00 = pp[0][0] + r, s01 = pp[0][1];
        const double s10 = pp[1][0], s11 = pp[1][1] + r;
        const double det = s00 * s11 - s01 * s10;
        if (det == 0.0) throw std::runtime_error("kalman_smooth: singular innovation");
        const double i00 = s11 / det, i01 = -s01 / det;
        const double i10 = -s10 / det, i11 = s00 / det;

        double gain[4][2];
        for (int i = 0; i < 4; ++i) {
            gain[i][0] = pp[i][0] * i00 + pp[i][1] * i10;
            gain[i][1] = pp[i][0] * i01 + pp[i][1] * i11;
        }
        for (int i = 0; i < 4; ++i) {
            x_filt[t][i] = x_pred[t][i] + gain[i][0] * y0 + gain[i][1] * y1;
        }
        Mat4 ikh = identity();
        for (int i = 0; i < 4; ++i) {
            ikh[i][0] -= gain[i][0];
            ikh[i][1] -= gain[i][1];
        }
        p_filt[t] = mul(ikh, pp);
    }

    // Rauch-Tung-Striebel backward pass.
    std::vector<Vec4> x_smooth(n);
    std::vector<Mat4> p_smooth(n);
    x_smooth[n - 1] = x_filt[n - 1];
    p_smooth[n - 1] = p_filt[n - 1];
    for (std::size_t t = n - 1; t-- > 0;) {
        const Mat4 gain = mul(mul(p_filt[t], ft), inverse(p_pred[t + 1]));
        Vec4 dx;
        for (int i = 0; i < 4; ++i) dx[i] = x_smooth[t + 1][i] - x_pred[t + 1][i];
        const Vec4 corr = mulv(gain, dx);
        for (int i = 0; i < 4; ++i) x_smooth[t][i] = x_filt[t][i] + corr[i];
        p_smooth[t] = add(p_filt[t],
                          mul(mul(gain, sub(p_smooth[t + 1], p_pred[t + 1])),
                              transpose(gain)));
    }

    KalmanSmoothDetail detail;
    detail.points.resize(n);
    detail.filtered_cov_trace.resize(n);
    detail.smoothed_cov_trace.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        detail.points[t] = {x_smooth[t][0], x_smooth[t][1]};
        detail.filtered_cov_trace[t] = trace(p_filt[t]);
        detail.smoothed_cov_trace[t] = trace(p_smooth[t]);
    }
    // Endpoints pinned to the input.
    detail.points.front() = ordered.front();
    detail.points.back() = ordered.back();
    return detail;
}

std::vector<GeoPoint> kalman_smooth(std::span<const GeoPoint> ordered,
                                    const KalmanParams& params) {
    return kalman_smooth_detail(ordered, params).points;
}

}  // namespace etascan
