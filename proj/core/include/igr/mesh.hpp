#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace igr {

// Uniform periodic 1D mesh. Face i sits at x = i*h; cell i spans
// [face_position(i), face_position(i+1)].
struct Mesh1D {
  int n_cells;
  double domain_length;
  double h;

  explicit Mesh1D(int cells, double length = 1.0)
      : n_cells(cells), domain_length(length), h(length / cells) {
    if (cells < 4) throw std::invalid_argument("Mesh1D: need at least 4 cells");
    if (!(length > 0.0)) throw std::invalid_argument("Mesh1D: domain length must be positive");
  }

  double cell_center(int i) const { return (i + 0.5) * h; }
  double face_position(int i) const { return i * h; }
  int wrap(int i) const { return ((i % n_cells) + n_cells) % n_cells; }

  bool operator==(const Mesh1D&) const = default;
};

// 3-point Gauss-Legendre rule on the reference cell [-1, 1]; exact for
// quintics, which covers every product of P1 data used in the weak forms.
inline constexpr std::array<double, 3> kGaussNodes = {
    -0.774596669241483377, 0.0, 0.774596669241483377};
inline constexpr std::array<double, 3> kGaussWeights = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

// Piecewise-linear DG coefficient vector on a Mesh1D. Per cell the local
// basis is {1, xi} with xi = 2(x - x_c)/h, so coefficient 0 is the cell mean
// and the global integral is h * sum of means.
class DgField {
 public:
  explicit DgField(const Mesh1D& mesh)
      : mesh_(mesh), mean_(mesh.n_cells, 0.0), slope_(mesh.n_cells, 0.0) {}

  const Mesh1D& mesh() const { return mesh_; }
  int n_cells() const { return mesh_.n_cells; }

  double mean(int c) const { return mean_[c]; }
  double& mean(int c) { return mean_[c]; }
  double slope(int c) const { return slope_[c]; }
  double& slope(int c) { return slope_[c]; }

  double value(int cell, double xi) const { return mean_[cell] + slope_[cell] * xi; }

  // Point evaluation at global coordinate x (periodically wrapped).
  double value_at(double x) const {
    const double L = mesh_.domain_length;
    double y = std::fmod(x, L);
    if (y < 0.0) y += L;
    int cell = static_cast<int>(y / mesh_.h);
    if (cell >= mesh_.n_cells) cell = mesh_.n_cells - 1;
    const double xi = 2.0 * (y - mesh_.cell_center(cell)) / mesh_.h;
    return value(cell, xi);
  }

  // One-sided limits at face i (between cells i-1 and i, periodic wrap).
  double left_trace(int face) const {
    const int c = mesh_.wrap(face - 1);
    return mean_[c] + slope_[c];
  }
  double right_trace(int face) const {
    const int c = mesh_.wrap(face);
    return mean_[c] - slope_[c];
  }

  DgField& operator+=(const DgField& o) {
    for (int c = 0; c < n_cells(); ++c) {
      mean_[c] += o.mean_[c];
      slope_[c] += o.slope_[c];
    }
    return *this;
  }
  DgField& operator-=(const DgField& o) {
    for (int c = 0; c < n_cells(); ++c) {
      mean_[c] -= o.mean_[c];
      slope_[c] -= o.slope_[c];
    }
    return *this;
  }
  DgField& operator*=(double a) {
    for (int c = 0; c < n_cells(); ++c) {
      mean_[c] *= a;
      slope_[c] *= a;
    }
    return *this;
  }

  friend DgField operator+(DgField a, const DgField& b) { return a += b; }
  friend DgField operator-(DgField a, const DgField& b) { return a -= b; }
  friend DgField operator*(double a, DgField f) { return f *= a; }

  double max_abs() const {
    double m = 0.0;
    for (int c = 0; c < n_cells(); ++c)
      m = std::max(m, std::abs(mean_[c]) + std::abs(slope_[c]));
    return m;
  }

 private:
  Mesh1D mesh_;
  std::vector<double> mean_, slope_;
};

// L2 projection of a pointwise function onto the P1 space, per cell, using
// the 3-point Gauss rule. Exact for polynomials of degree <= 5.
DgField project(const Mesh1D& mesh, const std::function<double(double)>& f);

// Projection from values already sampled at the Gauss points of each cell;
// samples[c][q] is f at node q of cell c.
DgField project_from_samples(const Mesh1D& mesh,
                             const std::vector<std::array<double, 3>>& samples);

// Exact integral of the piecewise-linear representation (= h * sum of means).
double integrate(const DgField& u);

struct FaceTrace {
  double left;
  double right;
};

// Both one-sided limits at each of the n_cells periodic faces.
std::vector<FaceTrace> face_traces(const DgField& u);

}  // namespace igr
