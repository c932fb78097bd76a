#include "asl1/data_io.hpp"

#include "asl1/random.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <string_view>
#include <vector>

namespace asl1 {

ParseError::ParseError(const std::string& what, std::size_t line, const std::string& path)
    : std::runtime_error((path.empty() ? "line " : path + ":") + std::to_string(line) + ": " + what),
      line_(line),
      detail_(what) {}

namespace {

bool parse_double(std::string_view token, double& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_index(std::string_view token, std::size_t& out) {
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end && !token.empty();
}

std::string format_double(double v) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return ss.str();
}

enum class LabelScheme { PlusMinus, ZeroOne, OneTwo };

}  // namespace

namespace {

struct RawLibsvm {
  std::vector<Triplet> entries;
  std::vector<double> targets;
  std::vector<std::size_t> lines;
  std::size_t num_features = 0;
};

RawLibsvm parse_raw(const std::string& text, std::optional<std::size_t> num_features) {
  RawLibsvm raw;
  std::size_t max_index = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::vector<std::pair<std::size_t, double>> row;
  std::vector<std::string_view> tokens;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line(text.data() + pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    tokens.clear();
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    if (tokens.empty()) continue;

    double target = 0.0;
    if (!parse_double(tokens[0], target) || !std::isfinite(target))
      throw ParseError("malformed label '" + std::string(tokens[0]) + "'", line_no);

    row.clear();
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const std::string_view tok = tokens[t];
      const auto colon = tok.find(':');
      std::size_t index = 0;
      double value = 0.0;
      if (colon == std::string_view::npos || !parse_index(tok.substr(0, colon), index) ||
          !parse_double(tok.substr(colon + 1), value) || !std::isfinite(value) || index == 0)
        throw ParseError("malformed feature '" + std::string(tok) + "'", line_no);
      row.emplace_back(index, value);
    }
    std::sort(row.begin(), row.end());
    for (std::size_t k = 1; k < row.size(); ++k)
      if (row[k].first == row[k - 1].first)
        throw ParseError("duplicate feature index " + std::to_string(row[k].first), line_no);

    const std::size_t r = raw.targets.size();
    for (const auto& [index, value] : row) {
      raw.entries.push_back({r, index - 1, value});
      max_index = std::max(max_index, index);
    }
    raw.targets.push_back(target);
    raw.lines.push_back(line_no);
  }

  raw.num_features = max_index;
  if (num_features) {
    if (*num_features < max_index)
      throw ParseError("feature index " + std::to_string(max_index) +
                           " exceeds the requested feature count " + std::to_string(*num_features),
                       line_no);
    raw.num_features = *num_features;
  }
  if (raw.num_features == 0) throw ParseError("no features found", line_no);
  return raw;
}

}  // namespace

LogisticProblem parse_libsvm(const std::string& text,
                             std::optional<std::size_t> num_features) {
  RawLibsvm raw = parse_raw(text, num_features);
  for (std::size_t r = 0; r < raw.targets.size(); ++r) {
    const double y = raw.targets[r];
    if (y != -1.0 && y != 0.0 && y != 1.0 && y != 2.0)
      throw ParseError("label " + format_double(y) + " cannot be mapped to +1/-1", raw.lines[r]);
  }

  const std::set<double> seen(raw.targets.begin(), raw.targets.end());
  LabelScheme scheme = LabelScheme::PlusMinus;
  if (seen.count(-1.0)) {
    scheme = LabelScheme::PlusMinus;
  } else if (seen.count(0.0)) {
    scheme = LabelScheme::ZeroOne;
  } else if (seen.count(2.0)) {
    scheme = LabelScheme::OneTwo;
  }
  Vector labels(raw.targets.size());
  for (std::size_t r = 0; r < raw.targets.size(); ++r) {
    const double y = raw.targets[r];
    bool ok = false;
    switch (scheme) {
      case LabelScheme::PlusMinus: ok = y == 1.0 || y == -1.0; labels[r] = y; break;
      case LabelScheme::ZeroOne: ok = y == 0.0 || y == 1.0; labels[r] = y == 1.0 ? 1.0 : -1.0; break;
      case LabelScheme::OneTwo: ok = y == 1.0 || y == 2.0; labels[r] = y == 1.0 ? 1.0 : -1.0; break;
    }
    if (!ok) throw ParseError("label conventions mixed within one file", raw.lines[r]);
  }

  LogisticProblem problem{
      SparseMatrix::from_triplets(raw.targets.size(), raw.num_features, std::move(raw.entries)),
      std::move(labels)};
  problem.validate();
  return problem;
}

LassoProblem parse_libsvm_regression(const std::string& text,
                                     std::optional<std::size_t> num_features) {
  RawLibsvm raw = parse_raw(text, num_features);
  LassoProblem problem{
      SparseMatrix::from_triplets(raw.targets.size(), raw.num_features, std::move(raw.entries)),
      std::move(raw.targets)};
  problem.validate();
  return problem;
}

LassoProblem read_libsvm_regression(const std::filesystem::path& path,
                                    std::optional<std::size_t> num_features) {
  const std::string text = read_file(path);
  try {
    return parse_libsvm_regression(text, num_features);
  } catch (const ParseError& e) {
    throw ParseError(e.detail(), e.line(), path.string());
  }
}

LogisticProblem read_libsvm(const std::filesystem::path& path,
                            std::optional<std::size_t> num_features) {
  const std::string text = read_file(path);
  try {
    return parse_libsvm(text, num_features);
  } catch (const ParseError& e) {
    throw ParseError(e.detail(), e.line(), path.string());
  }
}

void write_libsvm(const LogisticProblem& problem,
                  const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (std::size_t r = 0; r < problem.samples.rows(); ++r) {
    out << (problem.labels[r] > 0 ? "+1" : "-1");
    const auto idx = problem.samples.row_indices(r);
    const auto val = problem.samples.row_values(r);
    for (std::size_t k = 0; k < idx.size(); ++k)
      out << ' ' << (idx[k] + 1) << ':' << format_double(val[k]);
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

LassoInstance generate_lasso(std::size_t n, std::uint64_t seed) {
  if (n < 20) throw std::invalid_argument("generate_lasso: n must be >= 20");
  const std::size_t m = n / 2;
  const auto planted = static_cast<std::size_t>(std::llround(0.05 * static_cast<double>(m)));
  if (planted < 1) throw std::invalid_argument("generate_lasso: n too small for a nonzero planted entry");

  Rng rng(seed);
  Vector dense(m * n);
  for (double& a : dense) a = rng.uniform();

  // Partial Fisher-Yates for the planted positions.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Vector x_true(n, 0.0);
  for (std::size_t k = 0; k < planted; ++k) {
    const std::size_t pick = k + static_cast<std::size_t>(rng.below(n - k));
    std::swap(order[k], order[pick]);
  }
  for (std::size_t k = 0; k < planted; ++k) x_true[order[k]] = rng.coin() ? 1.0 : -1.0;

  Vector b(m);
  for (std::size_t r = 0; r < m; ++r) {
    double ax = 0.0;
    for (std::size_t c = 0; c < n; ++c) ax += dense[r * n + c] * x_true[c];
    b[r] = ax;
  }
  for (std::size_t r = 0; r < m; ++r) b[r] += 0.001 * rng.normal();

  double norm1 = 0.0;
  for (double v : x_true) norm1 += std::fabs(v);

  LassoInstance inst{LassoProblem{SparseMatrix::from_dense(m, n, dense), std::move(b)},
                     std::move(x_true), 0.99 * norm1};
  inst.problem.validate();
  return inst;
}

LogisticProblem generate_logistic(std::size_t samples, std::size_t features,
                                  std::uint64_t seed, double density) {
  if (samples == 0 || features == 0)
    throw std::invalid_argument("generate_logistic: empty problem");
  if (!(density > 0.0 && density <= 1.0))
    throw std::invalid_argument("generate_logistic: density must be in (0,1]");

  Rng rng(seed);
  Vector w(features, 0.0);
  const std::size_t planted = std::max<std::size_t>(1, features / 20);
  for (std::size_t k = 0; k < planted; ++k) w[rng.below(features)] = rng.coin() ? 1.0 : -1.0;

  std::vector<Triplet> entries;
  Vector labels(samples);
  for (std::size_t r = 0; r < samples; ++r) {
    double score = 0.0;
    for (std::size_t c = 0; c < features; ++c) {
      if (rng.uniform() < density) {
        const double v = rng.normal();
        entries.push_back({r, c, v});
        score += v * w[c];
      }
    }
    score += 0.1 * rng.normal();
    labels[r] = score >= 0.0 ? 1.0 : -1.0;
  }
  LogisticProblem p{SparseMatrix::from_triplets(samples, features, std::move(entries)),
                    std::move(labels)};
  p.validate();
  return p;
}

void write_trace(const ConvergenceTrace& trace,
                 const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << kTraceHeader << '\n';
  for (const TraceRow& r : trace.rows()) {
    out << r.iteration << ',' << format_double(r.time_s) << ','
        << format_double(r.objective) << ',' << format_double(r.residual) << ','
        << r.n_active << ',' << r.n_nonactive << ',' << format_double(r.alpha)
        << ',' << format_double(r.epsilon) << '\n';
  }
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

ConvergenceTrace read_trace(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader)
    throw ParseError("missing trace header", 1, path.string());
  ConvergenceTrace trace;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    TraceRow r;
    bool ok = fields.size() == 8 && parse_index(fields[0], r.iteration) &&
              parse_double(fields[1], r.time_s) && parse_double(fields[2], r.objective) &&
              parse_double(fields[3], r.residual) && parse_index(fields[4], r.n_active) &&
              parse_index(fields[5], r.n_nonactive) && parse_double(fields[6], r.alpha) &&
              parse_double(fields[7], r.epsilon);
    if (!ok) throw ParseError("malformed trace row", line_no, path.string());
    trace.push(r);
  }
  return trace;
}

}  // namespace asl1
