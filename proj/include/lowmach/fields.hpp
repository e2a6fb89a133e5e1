#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lowmach {

struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StatisticsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class BcKind { periodic, reservoir, wall_noslip, wall_freeslip };

inline bool is_periodic(BcKind k) { return k == BcKind::periodic; }

// Uniform 2D MAC grid. Scalars live at cell centers, vector components on
// faces, mixed quantities at nodes (cell corners). For periodic directions
// the wrap face is not stored (face count == cell count).
struct Grid2D {
    int nx = 0, ny = 0;
    double dx = 0.0, dy = 0.0;
    double thickness = 1.0;
    BcKind bc_x = BcKind::periodic;
    BcKind bc_y = BcKind::periodic;

    Grid2D() = default;
    Grid2D(int nx_, int ny_, double dx_, double dy_, BcKind bx = BcKind::periodic,
           BcKind by = BcKind::periodic, double thickness_ = 1.0)
        : nx(nx_), ny(ny_), dx(dx_), dy(dy_), thickness(thickness_), bc_x(bx), bc_y(by) {
        if (nx < 2 || ny < 2) throw ConfigError("Grid2D: nx and ny must be >= 2");
        if (dx <= 0 || dy <= 0) throw ConfigError("Grid2D: dx and dy must be > 0");
        if (thickness <= 0) throw ConfigError("Grid2D: thickness must be > 0");
    }

    double cell_volume() const { return dx * dy * thickness; }
    double lx() const { return nx * dx; }
    double ly() const { return ny * dy; }

    bool periodic_x() const { return is_periodic(bc_x); }
    bool periodic_y() const { return is_periodic(bc_y); }

    // Face/node array extents. x-face i sits at x = i*dx (left face of cell i).
    int nfx() const { return periodic_x() ? nx : nx + 1; }
    int nfy() const { return periodic_y() ? ny : ny + 1; }
    int nnx() const { return nfx(); }
    int nny() const { return nfy(); }

    double xc(int i) const { return (i + 0.5) * dx; }
    double yc(int j) const { return (j + 0.5) * dy; }

    bool same_layout(const Grid2D& o) const {
        return nx == o.nx && ny == o.ny && bc_x == o.bc_x && bc_y == o.bc_y;
    }
};

// Scalar field at cell centers, row-major with i fastest.
struct CellField {
    Grid2D grid;
    std::vector<double> v;

    CellField() = default;
    explicit CellField(const Grid2D& g, double fill = 0.0)
        : grid(g), v(static_cast<size_t>(g.nx) * g.ny, fill) {}

    double& operator()(int i, int j) { return v[static_cast<size_t>(j) * grid.nx + i]; }
    double operator()(int i, int j) const { return v[static_cast<size_t>(j) * grid.nx + i]; }
    size_t size() const { return v.size(); }
};

// Staggered vector field: x-component on vertical faces, y-component on
// horizontal faces. Also used for face-interpolated scalar pairs.
struct FaceVecField {
    Grid2D grid;
    std::vector<double> x;  // (nfx) x (ny)
    std::vector<double> y;  // (nx) x (nfy)

    FaceVecField() = default;
    explicit FaceVecField(const Grid2D& g, double fill = 0.0)
        : grid(g),
          x(static_cast<size_t>(g.nfx()) * g.ny, fill),
          y(static_cast<size_t>(g.nx) * g.nfy(), fill) {}

    double& fx(int i, int j) { return x[static_cast<size_t>(j) * grid.nfx() + i]; }
    double fx(int i, int j) const { return x[static_cast<size_t>(j) * grid.nfx() + i]; }
    double& fy(int i, int j) { return y[static_cast<size_t>(j) * grid.nx + i]; }
    double fy(int i, int j) const { return y[static_cast<size_t>(j) * grid.nx + i]; }
};

// Scalar at grid nodes (i*dx, j*dy).
struct NodeField {
    Grid2D grid;
    std::vector<double> v;

    NodeField() = default;
    explicit NodeField(const Grid2D& g, double fill = 0.0)
        : grid(g), v(static_cast<size_t>(g.nnx()) * g.nny(), fill) {}

    double& operator()(int i, int j) { return v[static_cast<size_t>(j) * grid.nnx() + i]; }
    double operator()(int i, int j) const { return v[static_cast<size_t>(j) * grid.nnx() + i]; }
};

struct SimState {
    CellField rho;
    CellField rho1;
    FaceVecField m;
    double t = 0.0;
    std::int64_t step = 0;

    SimState() = default;
    explicit SimState(const Grid2D& g) : rho(g), rho1(g), m(g) {}
};

void check_same_grid(const Grid2D& a, const Grid2D& b, const char* what);

// Per-side boundary concentrations for reservoir directions. Values for
// non-reservoir sides are ignored.
struct BoundaryData {
    double c_x_lo = 0.0, c_x_hi = 0.0;
    double c_y_lo = 0.0, c_y_hi = 0.0;
};

// Optional boundary face values of one scalar, used by the interpolation and
// flux operators on non-periodic sides. A side without a value takes the
// adjacent interior cell (one-sided), which is what zero-flux walls need.
struct ScalarBc {
    bool has_x_lo = false, has_x_hi = false, has_y_lo = false, has_y_hi = false;
    double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;

    static ScalarBc none() { return {}; }
    ScalarBc& set_x(double lo, double hi) {
        has_x_lo = has_x_hi = true;
        x_lo = lo;
        x_hi = hi;
        return *this;
    }
    ScalarBc& set_y(double lo, double hi) {
        has_y_lo = has_y_hi = true;
        y_lo = lo;
        y_hi = hi;
        return *this;
    }
};

// fields-module operations
FaceVecField interp_cell_to_faces(const CellField& a, const ScalarBc& bc = ScalarBc::none());
FaceVecField velocity_from_momentum(const FaceVecField& m, const FaceVecField& rho_faces);
CellField concentration(const SimState& state);
NodeField vorticity(const FaceVecField& v);

// reductions used all over
double sum_cells(const CellField& a);
double max_abs(const CellField& a);
double min_value(const CellField& a);
double max_value(const CellField& a);

}  // namespace lowmach
