// SPDX-License-Identifier: Apache-2.0
#include "hardy/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "hardy/error.hpp"

namespace hardy {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  std::string s = os.str();
  return v < 0 ? "(" + s + ")" : s;
}

std::string names(const std::string& prefix, int count, int first = 1) {
  std::string out;
  for (int i = 0; i < count; ++i) {
    if (i) out += ", ";
    out += prefix + std::to_string(first + i);
  }
  return out;
}

std::string sum_of_squares(const std::string& prefix, int count) {
  std::string out;
  for (int i = 1; i <= count; ++i) {
    if (i > 1) out += " + ";
    out += prefix + std::to_string(i) + "*" + prefix + std::to_string(i);
  }
  return out;
}

double euclidean_distance_to_origin(const Box& box, std::size_t first, std::size_t count) {
  double s = 0.0;
  for (std::size_t i = first; i < first + count; ++i) {
    const auto [lo, hi] = box.axes[i];
    const double c = std::clamp(0.0, lo, hi);
    s += c * c;
  }
  return std::sqrt(s);
}

double farthest_corner_norm(const Box& box) {
  double s = 0.0;
  for (const auto& [lo, hi] : box.axes) {
    const double c = std::max(std::abs(lo), std::abs(hi));
    s += c * c;
  }
  return std::sqrt(s);
}

}  // namespace

void GeometryContext::set_frame(const std::vector<std::vector<std::string>>& coefficients,
                                const std::string& density) {
  frame_.clear();
  for (const auto& row : coefficients) {
    if (row.size() != coordinates_.size()) throw ConfigError("frame row has wrong length");
    std::vector<std::optional<CompiledField>> compiled;
    for (const auto& src : row) {
      if (src == "0")
        compiled.emplace_back(std::nullopt);
      else
        compiled.emplace_back(compile(parse(src)));
    }
    frame_.push_back(std::move(compiled));
  }
  density_source_ = parse(density);
  if (density == "1")
    density_.reset();
  else
    density_ = compile(density_source_);
}

double GeometryContext::parameter(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end()) throw ConfigError("geometry '" + spec_ + "' has no parameter '" + name + "'");
  return it->second;
}

ScalarField GeometryContext::parse(std::string_view source) const {
  return parse_expression(source).substitute(helpers_);
}

CompiledField GeometryContext::compile(const ScalarField& f, const ParamMap& params) const {
  return CompiledField(f.substitute(helpers_), coordinates_, params);
}

GeometryContext GeometryContext::euclidean(int n) {
  if (n < 1 || n > static_cast<int>(kMaxDim)) throw ConfigError("euclidean: n out of range");
  GeometryContext g;
  g.kind_ = GeometryKind::Euclidean;
  g.spec_ = "euclidean:n=" + std::to_string(n);
  g.params_ = {{"n", n}};
  g.coordinates_ = default_coordinates(n);
  g.helpers_["r"] = parse_expression("norm(" + names("x", n) + ")");
  std::vector<std::vector<std::string>> rows(n, std::vector<std::string>(n, "0"));
  for (int i = 0; i < n; ++i) rows[i][i] = "1";
  g.set_frame(rows, "1");
  return g;
}

GeometryContext GeometryContext::euclidean_radial(int n) {
  if (n < 1 || n > static_cast<int>(kMaxDim)) throw ConfigError("euclidean-radial: n out of range");
  GeometryContext g;
  g.kind_ = GeometryKind::EuclideanRadial;
  g.spec_ = "euclidean-radial:n=" + std::to_string(n);
  g.params_ = {{"n", n}};
  g.coordinates_ = default_coordinates(n);
  g.helpers_["r"] = parse_expression("norm(" + names("x", n) + ")");
  std::vector<std::string> row;
  for (int j = 1; j <= n; ++j) row.push_back("x" + std::to_string(j) + "/r");
  g.set_frame({row}, "1");
  return g;
}

GeometryContext GeometryContext::half_space(int n) {
  if (n < 2 || n > static_cast<int>(kMaxDim)) throw ConfigError("halfspace: n out of range");
  GeometryContext g;
  g.kind_ = GeometryKind::HalfSpace;
  g.spec_ = "halfspace:n=" + std::to_string(n);
  g.params_ = {{"n", n}};
  g.coordinates_ = default_coordinates(n);
  g.helpers_["r"] = parse_expression("norm(" + names("x", n) + ")");
  g.helpers_["rho"] = parse_expression("norm(" + names("x", 2, n - 1) + ")");
  std::vector<std::vector<std::string>> rows(n, std::vector<std::string>(n, "0"));
  for (int i = 0; i < n; ++i) rows[i][i] = "1";
  g.set_frame(rows, "1");
  return g;
}

GeometryContext GeometryContext::hyperbolic_ball(int n) {
  if (n < 2 || n > static_cast<int>(kMaxDim)) throw ConfigError("hyperbolic: n out of range");
  GeometryContext g;
  g.kind_ = GeometryKind::HyperbolicBall;
  g.spec_ = "hyperbolic:n=" + std::to_string(n);
  g.params_ = {{"n", n}};
  g.coordinates_ = default_coordinates(n);
  g.helpers_["r"] = parse_expression("norm(" + names("x", n) + ")");
  g.helpers_["rho"] = parse_expression("log((1 + r)/(1 - r))").substitute(g.helpers_);
  const std::string conformal = "(1 - (" + sum_of_squares("x", n) + "))/2";
  std::vector<std::vector<std::string>> rows(n, std::vector<std::string>(n, "0"));
  for (int i = 0; i < n; ++i) rows[i][i] = conformal;
  g.set_frame(rows, num(std::pow(2.0, n)) + "/pow(1 - (" + sum_of_squares("x", n) + "), " + std::to_string(n) + ")");
  return g;
}

GeometryContext GeometryContext::heisenberg(int n) {
  if (n < 1 || 2 * n + 1 > static_cast<int>(kMaxDim)) throw ConfigError("heisenberg: n out of range");
  GeometryContext g;
  g.kind_ = GeometryKind::Heisenberg;
  g.spec_ = "heisenberg:n=" + std::to_string(n);
  g.params_ = {{"n", n}, {"Q", 2 * n + 2}};
  for (int i = 1; i <= n; ++i) g.coordinates_.push_back("x" + std::to_string(i));
  for (int i = 1; i <= n; ++i) g.coordinates_.push_back("y" + std::to_string(i));
  g.coordinates_.push_back("t");
  g.helpers_["r"] = parse_expression("norm(" + names("x", n) + ", " + names("y", n) + ")");
  g.helpers_["rho"] = parse_expression("pow(pow(r, 4) + t*t, 0.25)").substitute(g.helpers_);
  g.helpers_["Q"] = ScalarField::constant(2 * n + 2);
  const int m = 2 * n + 1;
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> row(m, "0");
    row[i] = "1";
    row[m - 1] = "2*y" + std::to_string(i + 1);
    rows.push_back(row);
  }
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> row(m, "0");
    row[n + i] = "1";
    row[m - 1] = "-2*x" + std::to_string(i + 1);
    rows.push_back(row);
  }
  g.set_frame(rows, "1");
  return g;
}

GeometryContext GeometryContext::grushin(int d, int k, double gamma) {
  if (d < 1 || k < 1 || d + k > static_cast<int>(kMaxDim)) throw ConfigError("grushin: d, k out of range");
  if (!(gamma > 0)) throw ConfigError("grushin: gamma must be positive");
  GeometryContext g;
  g.kind_ = GeometryKind::Grushin;
  std::ostringstream spec;
  spec << "grushin:d=" << d << ",k=" << k << ",gamma=" << gamma;
  g.spec_ = spec.str();
  g.params_ = {{"d", d}, {"k", k}, {"gamma", gamma}};
  for (int i = 1; i <= d; ++i) g.coordinates_.push_back("x" + std::to_string(i));
  for (int i = 1; i <= k; ++i) g.coordinates_.push_back("y" + std::to_string(i));
  g.helpers_["rx"] = parse_expression("norm(" + names("x", d) + ")");
  g.helpers_["ry"] = parse_expression("norm(" + names("y", k) + ")");
  g.helpers_["gamma"] = ScalarField::constant(gamma);
  // |y|^2 as a sum so rho stays smooth on y = 0.
  g.helpers_["rho"] = parse_expression("pow(pow(rx, 2 + 2*gamma) + (1 + gamma)*(1 + gamma)*(" +
                                       sum_of_squares("y", k) + "), 1/(2 + 2*gamma))")
                          .substitute(g.helpers_);
  const int m = d + k;
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i < d; ++i) {
    std::vector<std::string> row(m, "0");
    row[i] = "1";
    rows.push_back(row);
  }
  for (int j = 0; j < k; ++j) {
    std::vector<std::string> row(m, "0");
    row[d + j] = gamma == 1.0 ? "rx" : "pow(rx, " + num(gamma) + ")";
    rows.push_back(row);
  }
  g.set_frame(rows, "1");
  return g;
}

GeometryContext GeometryContext::edge(int n, int q) {
  if (n < 1 || q < 0 || 1 + n + q > static_cast<int>(kMaxDim)) throw ConfigError("edge: n, q out of range");
  GeometryContext g;
  g.kind_ = GeometryKind::Edge;
  g.spec_ = "edge:n=" + std::to_string(n) + ",q=" + std::to_string(q);
  g.params_ = {{"n", n}, {"q", q}};
  g.coordinates_.push_back("t");
  for (int i = 1; i <= n; ++i) g.coordinates_.push_back("x" + std::to_string(i));
  for (int i = 1; i <= q; ++i) g.coordinates_.push_back("y" + std::to_string(i));
  g.helpers_["rx"] = parse_expression("norm(" + names("x", n) + ")");
  if (q > 0) g.helpers_["ry"] = parse_expression("norm(" + names("y", q) + ")");
  std::string psi = "exp(-1/(t*t)) + " + sum_of_squares("x", n);
  if (q > 0) psi += " + " + sum_of_squares("y", q);
  g.helpers_["psi"] = parse_expression(psi);
  g.helpers_["W0"] = parse_expression("exp(-1/(t*t))/(t*t*psi)").substitute(g.helpers_);
  const int m = 1 + n + q;
  std::vector<std::vector<std::string>> rows;
  {
    std::vector<std::string> row(m, "0");
    row[0] = "t";
    rows.push_back(row);
  }
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> row(m, "0");
    row[1 + i] = "1";
    rows.push_back(row);
  }
  for (int j = 0; j < q; ++j) {
    std::vector<std::string> row(m, "0");
    row[1 + n + j] = "t";
    rows.push_back(row);
  }
  g.set_frame(rows, "pow(t, " + std::to_string(-1 - q) + ")");
  return g;
}

GeometryContext GeometryContext::from_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string name(spec.substr(0, colon));
  std::map<std::string, double> kv;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw ConfigError("geometry parameter needs key=value: '" + std::string(item) + "'");
      double v = 0.0;
      const std::string_view val = item.substr(eq + 1);
      const auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
      if (ec != std::errc() || ptr != val.data() + val.size())
        throw ConfigError("malformed geometry parameter '" + std::string(item) + "'");
      kv[std::string(item.substr(0, eq))] = v;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }
  auto take = [&](const std::string& key, double def) {
    auto it = kv.find(key);
    if (it == kv.end()) return def;
    const double v = it->second;
    kv.erase(it);
    return v;
  };
  auto integer = [](double v, const char* key) {
    if (std::floor(v) != v) throw ConfigError(std::string("geometry parameter '") + key + "' must be an integer");
    return static_cast<int>(v);
  };
  GeometryContext g = [&] {
    if (name == "euclidean") return euclidean(integer(take("n", 3), "n"));
    if (name == "euclidean-radial") return euclidean_radial(integer(take("n", 3), "n"));
    if (name == "halfspace") return half_space(integer(take("n", 2), "n"));
    if (name == "hyperbolic") return hyperbolic_ball(integer(take("n", 3), "n"));
    if (name == "heisenberg") return heisenberg(integer(take("n", 1), "n"));
    if (name == "grushin") {
      const int d = integer(take("d", 3), "d");
      const int k = integer(take("k", 1), "k");
      return grushin(d, k, take("gamma", 1.0));
    }
    if (name == "edge") {
      const int n = integer(take("n", 2), "n");
      return edge(n, integer(take("q", 1), "q"));
    }
    throw ConfigError("unknown geometry '" + name + "'");
  }();
  if (!kv.empty()) throw ConfigError("unknown parameter '" + kv.begin()->first + "' for geometry '" + name + "'");
  return g;
}

bool GeometryContext::in_domain(std::span<const double> x) const {
  if (x.size() != ambient_dim()) return false;
  const int n = static_cast<int>(ambient_dim());
  auto norm_range = [&](int first, int count) {
    double s = 0.0;
    for (int i = first; i < first + count; ++i) s += x[i] * x[i];
    return std::sqrt(s);
  };
  switch (kind_) {
    case GeometryKind::Euclidean:
    case GeometryKind::EuclideanRadial:
    case GeometryKind::Heisenberg:
      return norm_range(0, n) > 0.0;
    case GeometryKind::HalfSpace:
      return x[n - 1] > 0.0;
    case GeometryKind::HyperbolicBall: {
      const double r = norm_range(0, n);
      return r > 0.0 && r < 1.0;
    }
    case GeometryKind::Grushin:
      return norm_range(0, static_cast<int>(parameter("d"))) > 0.0;
    case GeometryKind::Edge:
      return x[0] > 0.0 && x[0] < 1.0;
  }
  return false;
}

bool GeometryContext::box_admissible(const Box& box, double margin) const {
  if (box.dim() != ambient_dim()) return false;
  const std::size_t n = ambient_dim();
  switch (kind_) {
    case GeometryKind::Euclidean:
    case GeometryKind::EuclideanRadial:
    case GeometryKind::Heisenberg:
      return euclidean_distance_to_origin(box, 0, n) >= margin;
    case GeometryKind::HalfSpace:
      return box.axes[n - 1].first >= margin;
    case GeometryKind::HyperbolicBall:
      return euclidean_distance_to_origin(box, 0, n) >= margin && farthest_corner_norm(box) <= 1.0 - margin;
    case GeometryKind::Grushin:
      return euclidean_distance_to_origin(box, 0, static_cast<std::size_t>(parameter("d"))) >= margin;
    case GeometryKind::Edge:
      return box.axes[0].first >= margin && box.axes[0].second <= 1.0 - margin;
  }
  return false;
}

FramePoint GeometryContext::at(std::span<const double> x) const {
  if (!in_domain(x)) {
    std::ostringstream os;
    os.precision(17);
    os << "point (";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ") is outside the domain of " << spec_;
    throw DomainError(os.str());
  }
  FramePoint p;
  p.ambient = ambient_dim();
  p.frame = frame_size();
  std::copy(x.begin(), x.end(), p.x.begin());
  for (std::size_t i = 0; i < frame_.size(); ++i)
    for (std::size_t j = 0; j < frame_[i].size(); ++j) {
      if (frame_[i][j])
        p.coefficient[i][j] = frame_[i][j]->jet1(x);
      else
        p.coefficient[i][j] = Jet1::constant(0.0, p.ambient);
    }
  if (density_) {
    const Jet1 w = density_->jet1(x);
    if (!(w.value > 0.0)) throw DomainError("non-positive volume density in " + spec_);
    p.density = w.value;
    for (std::size_t j = 0; j < p.ambient; ++j) p.log_density_grad[j] = w.grad[j] / w.value;
  }
  return p;
}

// ---------------------------------------------------------------------------

FrameVector frame_gradient(const FramePoint& p, const Jet2& f) {
  FrameVector out{};
  for (std::size_t i = 0; i < p.frame; ++i) {
    double s = 0.0;
    for (std::size_t l = 0; l < p.ambient; ++l) s += p.coefficient[i][l].value * f.grad[l];
    out[i] = s;
  }
  return out;
}

FrameVector frame_gradient(const GeometryContext& /*ctx*/, const CompiledField& f, const FramePoint& p) {
  return frame_gradient(p, f.jet2(p.point()));
}

Jet1 frame_derivative(const FramePoint& p, const Jet2& f, std::size_t i) {
  Jet1 out = Jet1::constant(0.0, p.ambient);
  for (std::size_t l = 0; l < p.ambient; ++l) {
    const Jet1& c = p.coefficient[i][l];
    if (c.value == 0.0) {
      bool zero = true;
      for (std::size_t j = 0; j < p.ambient; ++j) zero = zero && c.grad[j] == 0.0;
      if (zero) continue;
    }
    out.value += c.value * f.grad[l];
    for (std::size_t j = 0; j < p.ambient; ++j) out.grad[j] += c.grad[j] * f.grad[l] + c.value * f.hessian(l, j);
  }
  return out;
}

double divergence(const FramePoint& p, std::span<const Jet1> components) {
  double total = 0.0;
  for (std::size_t j = 0; j < p.ambient; ++j) {
    double pushed = 0.0;  // (sum_i G_i X_i)^j
    double deriv = 0.0;   // d_j of it
    for (std::size_t i = 0; i < p.frame; ++i) {
      const Jet1& c = p.coefficient[i][j];
      const Jet1& g = components[i];
      pushed += g.value * c.value;
      deriv += g.grad[j] * c.value + g.value * c.grad[j];
    }
    total += deriv + p.log_density_grad[j] * pushed;
  }
  return total;
}

double frame_divergence(const GeometryContext& ctx, std::span<const CompiledField> field, const FramePoint& p) {
  if (field.size() != ctx.frame_size())
    throw ConfigError("vector field has " + std::to_string(field.size()) + " components, frame has " +
                      std::to_string(ctx.frame_size()));
  std::array<Jet1, kMaxDim> g{};
  for (std::size_t i = 0; i < field.size(); ++i) g[i] = field[i].jet1(p.point());
  return divergence(p, {g.data(), field.size()});
}

double frame_divergence(const GeometryContext& ctx, const VectorFieldExpr& field, const FramePoint& p,
                        const ParamMap& params) {
  std::vector<CompiledField> compiled;
  for (const auto& c : field.components) compiled.push_back(ctx.compile(c, params));
  return frame_divergence(ctx, compiled, p);
}

double laplace_beltrami(const FramePoint& p, const Jet2& f) {
  std::array<Jet1, kMaxDim> g{};
  for (std::size_t i = 0; i < p.frame; ++i) g[i] = frame_derivative(p, f, i);
  return divergence(p, {g.data(), p.frame});
}

double laplace_beltrami(const GeometryContext& /*ctx*/, const CompiledField& f, const FramePoint& p) {
  return laplace_beltrami(p, f.jet2(p.point()));
}

double squared_norm(const FrameVector& v, std::size_t k) {
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += v[i] * v[i];
  return s;
}

}  // namespace hardy
