#include "noisetol/noise.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "noisetol/rng.hpp"

namespace noisetol {

namespace {

void check_rate(double r, const char* what) {
  if (!(r >= 0.0) || !(r < 0.5) || !std::isfinite(r))
    throw std::invalid_argument(std::string(what) +
                                ": noise rate must lie in [0, 0.5)");
}

std::string format_rate(double r) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", r);
  return buf;
}

}  // namespace

std::array<double, 2> auto_center(const Dataset& data) {
  if (data.dim() < 2)
    throw std::invalid_argument("auto_center: needs at least 2 features");
  double c0 = 0.0, c1 = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto p = data.point(i);
    c0 += p[0];
    c1 += p[1];
  }
  const double n = static_cast<double>(data.size());
  return {c0 / n, c1 / n};
}

std::vector<double> flip_probabilities(const Dataset& data,
                                       const NoiseSpec& spec) {
  const std::size_t n = data.size();
  std::vector<double> etas(n, 0.0);

  if (const auto* u = std::get_if<UniformNoise>(&spec)) {
    check_rate(u->rate, "uniform");
    for (auto& e : etas) e = u->rate;
  } else if (const auto* p = std::get_if<PerPointNoise>(&spec)) {
    if (p->rates.size() != n)
      throw std::invalid_argument(
          "perpoint: rate table has " + std::to_string(p->rates.size()) +
          " entries for " + std::to_string(n) + " points");
    for (double r : p->rates) check_rate(r, "perpoint");
    etas = p->rates;
  } else if (const auto* c = std::get_if<ClassConditionalNoise>(&spec)) {
    check_rate(c->rate_positive, "cccn");
    check_rate(c->rate_negative, "cccn");
    for (std::size_t i = 0; i < n; ++i)
      etas[i] = data.label(i) == +1 ? c->rate_positive : c->rate_negative;
  } else if (const auto* q = std::get_if<QuadrantNoise>(&spec)) {
    for (double r : q->rates) check_rate(r, "quadrant");
    if (data.dim() < 2)
      throw std::invalid_argument("quadrant: needs at least 2 features");
    const std::array<double, 2> c2 =
        q->center ? *q->center : auto_center(data);
    for (std::size_t i = 0; i < n; ++i) {
      const auto p2 = data.point(i);
      const bool xpos = p2[0] - c2[0] >= 0.0;
      const bool ypos = p2[1] - c2[1] >= 0.0;
      // counter-clockwise quadrants: (+,+), (-,+), (-,-), (+,-)
      const std::size_t quadrant =
          xpos ? (ypos ? 0 : 3) : (ypos ? 1 : 2);
      etas[i] = q->rates[quadrant];
    }
  }
  return etas;
}

NoisyDataset inject(const Dataset& data, const NoiseSpec& spec,
                    std::uint64_t seed) {
  const std::vector<double> etas = flip_probabilities(data, spec);
  rng::Stream stream(seed);
  std::vector<bool> flipped(data.size(), false);
  std::vector<int> noisy(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    flipped[i] = stream.uniform01() < etas[i];
    noisy[i] = data.label(i) * (flipped[i] ? -1 : +1);
  }
  return NoisyDataset{data, std::move(noisy), std::move(flipped), seed};
}

namespace {

double parse_rate_token(const std::string& tok, const std::string& text) {
  double v = 0.0;
  const char* b = tok.data();
  auto res = std::from_chars(b, b + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != b + tok.size())
    throw std::invalid_argument("noise spec '" + text + "': cannot parse '" +
                                tok + "' as a number");
  return v;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

NoiseSpec parse_noise_spec(const std::string& text) {
  if (text == "none") return UniformNoise{0.0};

  const std::size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("noise spec '" + text +
                                "': expected kind:args");
  const std::string kind = text.substr(0, colon);
  const std::string args = text.substr(colon + 1);

  if (kind == "uniform") {
    UniformNoise u{parse_rate_token(args, text)};
    check_rate(u.rate, "uniform");
    return u;
  }
  if (kind == "cccn") {
    const auto toks = split_commas(args);
    if (toks.size() != 2)
      throw std::invalid_argument("noise spec '" + text +
                                  "': cccn needs two rates");
    ClassConditionalNoise c{parse_rate_token(toks[0], text),
                            parse_rate_token(toks[1], text)};
    check_rate(c.rate_positive, "cccn");
    check_rate(c.rate_negative, "cccn");
    return c;
  }
  if (kind == "quadrant") {
    const auto toks = split_commas(args);
    if (toks.size() != 4 && toks.size() != 5 && toks.size() != 6)
      throw std::invalid_argument(
          "noise spec '" + text +
          "': quadrant needs four rates plus an optional center");
    QuadrantNoise q;
    for (std::size_t i = 0; i < 4; ++i) {
      q.rates[i] = parse_rate_token(toks[i], text);
      check_rate(q.rates[i], "quadrant");
    }
    if (toks.size() == 5) {
      if (toks[4] != "auto")
        throw std::invalid_argument("noise spec '" + text +
                                    "': expected 'auto' or cx,cy");
    } else if (toks.size() == 6) {
      q.center = {parse_rate_token(toks[4], text),
                  parse_rate_token(toks[5], text)};
    }
    return q;
  }
  if (kind == "perpoint") {
    std::ifstream in(args);
    if (!in)
      throw std::invalid_argument("noise spec '" + text + "': cannot open '" +
                                  args + "'");
    PerPointNoise p;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const double r = parse_rate_token(line, text + " line " +
                                                  std::to_string(lineno));
      check_rate(r, "perpoint");
      p.rates.push_back(r);
    }
    if (p.rates.empty())
      throw std::invalid_argument("noise spec '" + text + "': empty table");
    return p;
  }
  throw std::invalid_argument("noise spec '" + text + "': unknown kind '" +
                              kind + "'");
}

std::string to_text(const NoiseSpec& spec) {
  if (const auto* u = std::get_if<UniformNoise>(&spec)) {
    if (u->rate == 0.0) return "none";
    return "uniform:" + format_rate(u->rate);
  }
  if (const auto* c = std::get_if<ClassConditionalNoise>(&spec)) {
    return "cccn:" + format_rate(c->rate_positive) + "," +
           format_rate(c->rate_negative);
  }
  if (const auto* q = std::get_if<QuadrantNoise>(&spec)) {
    std::string s = "quadrant:";
    for (std::size_t i = 0; i < 4; ++i) {
      if (i) s += ",";
      s += format_rate(q->rates[i]);
    }
    if (q->center) {
      s += "," + format_rate((*q->center)[0]) + "," +
           format_rate((*q->center)[1]);
    } else {
      s += ",auto";
    }
    return s;
  }
  const auto& p = std::get<PerPointNoise>(spec);
  return "perpoint:<" + std::to_string(p.rates.size()) + " rates>";
}

}  // namespace noisetol
