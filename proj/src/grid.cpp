#include "gbeam/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gbeam/fft.hpp"

namespace gbeam {

Grid Grid::make(std::size_t L) {
  if (L < 8 || L % 2 != 0)
    throw std::invalid_argument("Grid: length must be an even integer >= 8");
  return Grid{L};
}

std::size_t Grid::frequency_index(long k) const {
  long half = static_cast<long>(length) / 2;
  if (k < -half || k >= half) throw std::out_of_range("Grid: frequency out of range");
  return static_cast<std::size_t>(k + half);
}

double wrap_displacement(double d) {
  double w = d - std::floor(d + 0.5);
  if (w <= -0.5) w += 1.0;  // exact representative in (-1/2, 1/2]
  return w;
}

namespace {

void check_same_grid(const Signal& u, const Signal& v) {
  if (u.grid.length != v.grid.length || u.values.size() != v.values.size())
    throw std::invalid_argument("grid mismatch");
}

}  // namespace

Signal dft(const Signal& s) {
  const std::size_t L = s.grid.length;
  std::vector<cplx> work = s.values;
  Fft plan(L);
  plan.forward(work.data());
  Signal out = Signal::zeros(s.grid);
  const double scale = 1.0 / std::sqrt(static_cast<double>(L));
  // standard DC-first order -> frequency-ascending order
  for (std::size_t idx = 0; idx < L; ++idx) {
    long k = out.grid.frequency(idx);
    std::size_t src = static_cast<std::size_t>((k + static_cast<long>(L)) % static_cast<long>(L));
    out.values[idx] = work[src] * scale;
  }
  return out;
}

Signal idft(const Signal& s) {
  const std::size_t L = s.grid.length;
  std::vector<cplx> work(L);
  for (std::size_t idx = 0; idx < L; ++idx) {
    long k = s.grid.frequency(idx);
    std::size_t dst = static_cast<std::size_t>((k + static_cast<long>(L)) % static_cast<long>(L));
    work[dst] = s.values[idx];
  }
  Fft plan(L);
  plan.inverse(work.data());
  Signal out{s.grid, std::move(work)};
  const double scale = 1.0 / std::sqrt(static_cast<double>(L));
  for (auto& v : out.values) v *= scale;
  return out;
}

double l2_norm_unweighted(const Signal& s) {
  double acc = 0.0;
  for (const auto& v : s.values) acc += std::norm(v);
  return std::sqrt(acc);
}

double l2_norm(const Signal& s) {
  return l2_norm_unweighted(s) / std::sqrt(static_cast<double>(s.grid.length));
}

double rel_error(const Signal& u, const Signal& v) {
  check_same_grid(u, v);
  double ref = l2_norm(v);
  if (ref == 0.0) throw std::invalid_argument("zero reference");
  double acc = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) acc += std::norm(u.values[i] - v.values[i]);
  return std::sqrt(acc / static_cast<double>(u.grid.length)) / ref;
}

Signal operator-(const Signal& u, const Signal& v) {
  check_same_grid(u, v);
  Signal out = u;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= v.values[i];
  return out;
}

Signal operator+(const Signal& u, const Signal& v) {
  check_same_grid(u, v);
  Signal out = u;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += v.values[i];
  return out;
}

Signal operator*(cplx alpha, const Signal& u) {
  Signal out = u;
  for (auto& v : out.values) v *= alpha;
  return out;
}

void write_signal_csv(const Signal& s, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  std::fputs("index,real,imag\n", f);
  for (std::size_t i = 0; i < s.values.size(); ++i)
    std::fprintf(f, "%zu,%.17g,%.17g\n", i, s.values[i].real(), s.values[i].imag());
  std::fclose(f);
}

Signal read_signal_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path);
  std::vector<cplx> vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string idx, re, im;
    if (!std::getline(ss, idx, ',') || !std::getline(ss, re, ',') || !std::getline(ss, im, ','))
      throw std::runtime_error("malformed csv row: " + line);
    vals.emplace_back(std::stod(re), std::stod(im));
  }
  Grid g = Grid::make(vals.size());
  return Signal{g, std::move(vals)};
}

}  // namespace gbeam
