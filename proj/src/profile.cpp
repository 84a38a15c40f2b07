#include "bnls/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bnls/operators.hpp"

namespace bnls {

RadialProfile make_profile(GridPtr grid, const std::function<double(double)>& f) {
    RadialProfile u;
    u.grid = std::move(grid);
    u.values.resize(u.grid->n());
    for (int i = 0; i < u.grid->n(); ++i) u.values[i] = f(u.grid->r[i]);
    u.values.back() = 0.0;
    return u;
}

RadialProfile make_profile(GridPtr grid, std::vector<double> values) {
    if (static_cast<int>(values.size()) != grid->n())
        throw std::invalid_argument("make_profile: size mismatch");
    RadialProfile u;
    u.grid = std::move(grid);
    u.values = std::move(values);
    u.values.back() = 0.0;
    return u;
}

double max_abs(const RadialProfile& u) {
    double m = 0.0;
    for (double v : u.values) m = std::max(m, std::abs(v));
    return m;
}

bool truncation_ok(const RadialProfile& u) {
    int n = u.grid->n();
    double tail = std::abs(u.values[n - 2]);
    return tail <= 1e-12 * std::max(max_abs(u), 1e-300);
}

RadialProfile dilate_rescaled(const RadialProfile& u, double s) {
    RadialProfile v;
    v.grid = share(u.grid->scaled(std::exp(-s)));
    v.values.resize(u.values.size());
    const double amp = std::exp(0.5 * u.grid->dim * s);
    for (size_t i = 0; i < u.values.size(); ++i) v.values[i] = amp * u.values[i];
    return v;
}

namespace {

// Steffen's monotonicity-preserving cubic slopes.
std::vector<double> steffen_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    std::vector<double> m(n);
    auto h = [&](int i) { return x[i + 1] - x[i]; };
    auto sec = [&](int i) { return (y[i + 1] - y[i]) / h(i); };
    for (int i = 1; i + 1 < n; ++i) {
        double s0 = sec(i - 1), s1 = sec(i);
        double pi = (s0 * h(i) + s1 * h(i - 1)) / (h(i - 1) + h(i));
        double sgn = (s0 > 0.0 && s1 > 0.0) ? 1.0 : (s0 < 0.0 && s1 < 0.0) ? -1.0 : 0.0;
        m[i] = sgn * std::min({std::abs(s0), std::abs(s1), 0.5 * std::abs(pi)}) * 2.0;
    }
    // One-sided ends, limited.
    {
        double s0 = sec(0);
        double p0 = s0 * (1.0 + h(0) / (h(0) + h(1))) - sec(1) * h(0) / (h(0) + h(1));
        if (p0 * s0 <= 0.0)
            p0 = 0.0;
        else if (std::abs(p0) > 2.0 * std::abs(s0))
            p0 = 2.0 * s0;
        m[0] = p0;
        double sl = sec(n - 2);
        double pl = sl * (1.0 + h(n - 2) / (h(n - 2) + h(n - 3))) -
                    sec(n - 3) * h(n - 2) / (h(n - 2) + h(n - 3));
        if (pl * sl <= 0.0)
            pl = 0.0;
        else if (std::abs(pl) > 2.0 * std::abs(sl))
            pl = 2.0 * sl;
        m[n - 1] = pl;
    }
    return m;
}

struct Interpolant {
    const std::vector<double>& x;
    const std::vector<double>& y;
    std::vector<double> m;

    explicit Interpolant(const RadialProfile& u)
        : x(u.grid->r), y(u.values), m(steffen_slopes(u.grid->r, u.values)) {}

    double operator()(double q) const {
        if (q <= x.front()) return y.front();
        if (q >= x.back()) return 0.0;
        auto it = std::upper_bound(x.begin(), x.end(), q);
        int i = static_cast<int>(it - x.begin()) - 1;
        double h = x[i + 1] - x[i];
        double t = (q - x[i]) / h;
        double t2 = t * t, t3 = t2 * t;
        return y[i] * (2 * t3 - 3 * t2 + 1) + h * m[i] * (t3 - 2 * t2 + t) +
               y[i + 1] * (-2 * t3 + 3 * t2) + h * m[i + 1] * (t3 - t2);
    }
};

double mass_sq(const RadialProfile& u) {
    double s = 0.0;
    for (int i = 0; i < u.grid->n(); ++i) s += u.grid->w[i] * u.values[i] * u.values[i];
    return s;
}

}  // namespace

RadialProfile dilate(const RadialProfile& u, double s) {
    const RadialGrid& g = *u.grid;
    const double stretch = std::exp(s);
    if (s < 0.0) {
        // Expansion: the part of u supported beyond e^s * rmax leaves the grid.
        double cut = stretch * g.rmax();
        double escaped = 0.0;
        for (int i = 0; i < g.n(); ++i)
            if (g.r[i] >= cut) escaped = std::max(escaped, std::abs(u.values[i]));
        if (escaped > 1e-10 * std::max(max_abs(u), 1e-300))
            throw std::runtime_error("domain overflow");
    }
    Interpolant interp(u);
    const double amp = std::exp(0.5 * g.dim * s);
    RadialProfile v;
    v.grid = u.grid;
    v.values.resize(g.n());
    for (int i = 0; i < g.n(); ++i) v.values[i] = amp * interp(stretch * g.r[i]);
    v.values.back() = 0.0;
    double m_old = mass_sq(u), m_new = mass_sq(v);
    if (m_new > 0.0) {
        double fix = std::sqrt(m_old / m_new);
        for (double& val : v.values) val *= fix;
    }
    return v;
}

RadialProfile resample_to(const RadialProfile& u, GridPtr target) {
    if (target.get() == u.grid.get()) return u;
    Interpolant interp(u);
    RadialProfile v;
    v.grid = std::move(target);
    v.values.resize(v.grid->n());
    for (int i = 0; i < v.grid->n(); ++i) v.values[i] = interp(v.grid->r[i]);
    v.values.back() = 0.0;
    return v;
}

double h2_norm(const RadialProfile& a) {
    std::vector<double> lap(a.values.size());
    apply_lap(*a.grid, a.values, lap);
    return std::sqrt(a.grid->inner(a.values, a.values) + a.grid->inner(lap, lap));
}

double h2_distance(const RadialProfile& a, const RadialProfile& b) {
    RadialProfile br = resample_to(b, a.grid);
    RadialProfile d;
    d.grid = a.grid;
    d.values.resize(a.values.size());
    for (size_t i = 0; i < a.values.size(); ++i) d.values[i] = a.values[i] - br.values[i];
    return h2_norm(d);
}

void write_profile(const std::string& path, const RadialProfile& u, const ProfileHeader& hdr,
                   const std::vector<std::string>& config_lines) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("write_profile: cannot open " + path);
    std::fprintf(f, "# bnls-profile N=%d p=%.17g a=%.17g mu=%.17g lambda=%.17g branch=%s\n",
                 hdr.N, hdr.p, hdr.a, hdr.mu, hdr.lambda,
                 hdr.branch.empty() ? "none" : hdr.branch.c_str());
    for (const auto& line : config_lines) std::fprintf(f, "# config %s\n", line.c_str());
    for (int i = 0; i < u.grid->n(); ++i)
        std::fprintf(f, "%.17g %.17g\n", u.grid->r[i], u.values[i]);
    std::fclose(f);
}

LoadedProfile read_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_profile: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_profile: empty file");

    LoadedProfile out;
    {
        std::istringstream ss(line);
        std::string tok;
        ss >> tok;  // '#'
        ss >> tok;  // 'bnls-profile'
        if (tok != "bnls-profile") throw std::runtime_error("read_profile: bad header");
        auto field = [&](const char* name) -> std::string {
            std::string key = std::string(name) + "=";
            auto pos = line.find(key);
            if (pos == std::string::npos)
                throw std::runtime_error("read_profile: missing header field " + std::string(name));
            auto end = line.find(' ', pos);
            return line.substr(pos + key.size(), end - pos - key.size());
        };
        out.header.N = std::stoi(field("N"));
        out.header.p = std::stod(field("p"));
        out.header.a = std::stod(field("a"));
        out.header.mu = std::stod(field("mu"));
        out.header.lambda = std::stod(field("lambda"));
        out.header.branch = field("branch");
    }

    std::vector<double> r, v;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        double a, b;
        if (!(ss >> a >> b)) throw std::runtime_error("read_profile: bad data line");
        r.push_back(a);
        v.push_back(b);
    }
    RadialGrid g = make_grid_from_nodes(out.header.N, r);
    out.profile = make_profile(share(std::move(g)), std::move(v));
    return out;
}

}  // namespace bnls
