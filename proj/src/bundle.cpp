#include "mulab/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mulab {

PolarValue polar_from(std::complex<double> z) {
    if (z.real() == 0.0 && z.imag() == 0.0) return {0.0, 0.0};
    return {std::abs(z), std::atan2(z.imag(), z.real())};
}

PolarValue unit_from(std::complex<double> lambda) {
    const double m = std::abs(lambda);
    if (std::abs(m - 1.0) > kUnimodularTol)
        throw std::domain_error("invalid fiber point: |lambda| = " + std::to_string(m) +
                                " is not unimodular");
    return {1.0, std::atan2(lambda.imag(), lambda.real())};
}

std::complex<double> to_complex(PolarValue v) {
    if (v.mod == 0.0) return {0.0, 0.0};
    return {v.mod * std::cos(v.arg), v.mod * std::sin(v.arg)};
}

bool polar_equal(PolarValue a, PolarValue b) {
    if (a.mod == 0.0 && b.mod == 0.0) return true;
    return a.mod == b.mod && a.arg == b.arg;
}

TripleFn TripleFn::from_complex_values(const std::vector<std::complex<double>>& zs) {
    TripleFn f(zs.size());
    for (std::size_t b = 0; b < zs.size(); ++b) f.set(b, zs[b]);
    return f;
}

std::vector<std::complex<double>> TripleFn::complex_values() const {
    std::vector<std::complex<double>> out(vals_.size());
    for (std::size_t b = 0; b < vals_.size(); ++b) out[b] = to_complex(vals_[b]);
    return out;
}

void TripleFn::set(std::size_t b, PolarValue v) {
    if (!(v.mod >= 0.0))
        throw std::invalid_argument("polar value must have a nonnegative modulus");
    vals_[b] = v.mod == 0.0 ? PolarValue{0.0, 0.0} : v;
}

double TripleFn::norm() const {
    double m = 0.0;
    for (const PolarValue& v : vals_) m = std::max(m, v.mod);
    return m;
}

TripleFn TripleFn::rotated(double angle) const {
    TripleFn out(*this);
    for (PolarValue& v : out.vals_)
        if (v.mod != 0.0) v.arg += angle;
    return out;
}

TripleFn TripleFn::conjugated() const {
    TripleFn out(*this);
    for (PolarValue& v : out.vals_) v.arg = -v.arg;
    return out;
}

TripleFn TripleFn::scaled(double s) const {
    TripleFn out(*this);
    const double mag = std::abs(s);
    for (PolarValue& v : out.vals_) {
        v.mod *= mag;
        if (v.mod == 0.0) {
            v = {0.0, 0.0};
        } else if (s < 0.0) {
            v.arg += kTwoPi / 2.0;
        }
    }
    return out;
}

TripleFn TripleFn::divided(double d) const {
    if (!(d > 0.0)) throw std::invalid_argument("divisor must be positive");
    TripleFn out(*this);
    for (PolarValue& v : out.vals_) {
        v.mod /= d;
        if (v.mod == 0.0) v = {0.0, 0.0};
    }
    return out;
}

bool polar_equal(const TripleFn& a, const TripleFn& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!polar_equal(a.vals_[i], b.vals_[i])) return false;
    return true;
}

TripleFn add(const TripleFn& a, const TripleFn& b) {
    if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
    TripleFn out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.set(i, a.value(i) + b.value(i));
    return out;
}

TripleFn subtract(const TripleFn& a, const TripleFn& b) {
    if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
    TripleFn out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.set(i, a.value(i) - b.value(i));
    return out;
}

double sup_distance(const TripleFn& a, const TripleFn& b) {
    if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.value(i) - b.value(i)));
    return m;
}

namespace {

// Triangle sums of exact metric entries may round below the direct entry;
// allow that much and no more.
double triangle_slack(double scale) { return 1e-12 * scale; }

} // namespace

Bundle::Bundle(std::vector<std::string> base_points,
               std::vector<std::vector<double>> metric,
               int fiber_samples)
    : names_(std::move(base_points)), metric_(std::move(metric)), fiber_samples_(fiber_samples) {
    const std::size_t n = names_.size();
    if (n == 0) throw std::invalid_argument("bundle needs at least one base point");
    if (fiber_samples_ < 8) throw std::invalid_argument("fiber_samples must be at least 8");

    std::set<std::string> seen;
    for (const std::string& name : names_)
        if (!seen.insert(name).second)
            throw std::invalid_argument("duplicate base point name: " + name);

    if (metric_.size() != n) throw std::invalid_argument("metric must be an n x n table");
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (metric_[i].size() != n) throw std::invalid_argument("metric must be an n x n table");
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(metric_[i][j]));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (metric_[i][i] != 0.0)
            throw std::invalid_argument("metric diagonal must be exactly zero at (" +
                                        names_[i] + "," + names_[i] + ")");
        for (std::size_t j = 0; j < n; ++j) {
            if (metric_[i][j] != metric_[j][i])
                throw std::invalid_argument("metric is not symmetric at (" + names_[i] + "," +
                                            names_[j] + ")");
            if (i != j && !(metric_[i][j] > 0.0))
                throw std::invalid_argument("metric must be positive off the diagonal at (" +
                                            names_[i] + "," + names_[j] + ")");
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (metric_[i][j] > metric_[i][k] + metric_[k][j] + triangle_slack(scale)) {
                    std::ostringstream msg;
                    msg << "triangle inequality violated at (" << names_[i] << "," << names_[j]
                        << "," << names_[k] << "): " << metric_[i][j] << " > " << metric_[i][k]
                        << " + " << metric_[k][j];
                    throw std::invalid_argument(msg.str());
                }
}

Bundle Bundle::ring(std::size_t n, int fiber_samples) {
    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i) names[i] = "p" + std::to_string(i);
    std::vector<std::vector<double>> metric(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) {
                const double gap = static_cast<double>(i > j ? i - j : j - i);
                metric[i][j] = 2.0 * std::sin(gap * (kTwoPi / 2.0) / static_cast<double>(n));
            }
    return Bundle(std::move(names), std::move(metric), fiber_samples);
}

Bundle Bundle::two_points(double distance, int fiber_samples) {
    return Bundle({"b0", "b1"}, {{0.0, distance}, {distance, 0.0}}, fiber_samples);
}

Bundle Bundle::from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("bundle description is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("base_points") || !doc.contains("metric"))
        throw std::invalid_argument("bundle description needs base_points and metric fields");
    std::vector<std::string> names;
    for (const auto& item : doc.at("base_points")) {
        if (!item.is_string())
            throw std::invalid_argument("base_points must be an array of names");
        names.push_back(item.get<std::string>());
    }
    std::vector<std::vector<double>> metric;
    for (const auto& row : doc.at("metric")) {
        std::vector<double> r;
        for (const auto& cell : row) {
            if (!cell.is_number())
                throw std::invalid_argument("metric entries must be numbers");
            r.push_back(cell.get<double>());
        }
        metric.push_back(std::move(r));
    }
    const int m = doc.value("fiber_samples", 64);
    return Bundle(std::move(names), std::move(metric), m);
}

Bundle Bundle::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open bundle description: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

double Bundle::fiber_angle(int k) const {
    return kTwoPi * static_cast<double>(k) / static_cast<double>(fiber_samples_);
}

std::complex<double> Bundle::fiber_phase(int k) const {
    return std::polar(1.0, fiber_angle(k));
}

double Bundle::diameter() const {
    double d = 0.0;
    for (const auto& row : metric_)
        for (double v : row) d = std::max(d, v);
    return d;
}

bool Bundle::contains(const Ball& ball, std::size_t b) const {
    return metric_[ball.center][b] < ball.radius;
}

double norm(const TripleFn& a) { return a.norm(); }

std::complex<double> full_eval(const TripleFn& a, std::complex<double> lambda, std::size_t b) {
    if (b >= a.size()) throw std::out_of_range("base index out of range");
    const double m = std::abs(lambda);
    if (std::abs(m - 1.0) > kUnimodularTol)
        throw std::domain_error("invalid fiber point: |lambda| = " + std::to_string(m) +
                                " is not unimodular");
    return lambda * a.value(b);
}

TripleFn urysohn_peak(const Bundle& bd, std::size_t t0, double r_in, double r_out) {
    if (t0 >= bd.size()) throw std::out_of_range("base index out of range");
    if (!(0.0 <= r_in && r_in < r_out))
        throw std::domain_error("invalid radii: need 0 <= r_in < r_out");
    TripleFn f(bd.size());
    for (std::size_t b = 0; b < bd.size(); ++b) {
        const double d = bd.distance(t0, b);
        double h = 0.0;
        if (d <= r_in) {
            h = 1.0;
        } else if (d < r_out) {
            h = (r_out - d) / (r_out - r_in);
        }
        f.set(b, PolarValue{h, 0.0});
    }
    return f;
}

std::pair<Ball, Ball> separate(const Bundle& bd, std::size_t t1, std::size_t t2) {
    if (t1 >= bd.size() || t2 >= bd.size()) throw std::out_of_range("base index out of range");
    if (t1 == t2) throw std::domain_error("separate requires distinct base points");
    const double r = bd.distance(t1, t2) / 3.0;
    return {Ball{t1, r}, Ball{t2, r}};
}

Ball shrink(const Bundle& bd, const Ball& inner, const Ball& outer) {
    if (inner.center >= bd.size() || outer.center >= bd.size())
        throw std::out_of_range("base index out of range");
    if (inner.center != outer.center)
        throw std::domain_error("invalid nesting: shrink needs concentric balls");
    if (!(inner.radius < outer.radius))
        throw std::domain_error("invalid nesting: inner radius must be smaller");
    return Ball{inner.center, (inner.radius + outer.radius) / 2.0};
}

} // namespace mulab
