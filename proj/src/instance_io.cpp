// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#include "privclust/instance_io.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

namespace privclust {

namespace {

struct Lines {
  std::vector<std::vector<std::string>> rows;  // tokenized nonempty lines
  std::size_t at = 0;

  explicit Lines(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::vector<std::string> toks;
      std::string t;
      while (ls >> t) toks.push_back(t);
      if (!toks.empty()) rows.push_back(std::move(toks));
    }
  }

  const std::vector<std::string>& next(const std::string& what) {
    if (at >= rows.size()) throw ParseError("unexpected end of document before " + what);
    return rows[at++];
  }

  const std::vector<std::string>& keyword(const std::string& kw) {
    const auto& row = next(kw);
    if (row[0] != kw) throw ParseError("expected '" + kw + "', found '" + row[0] + "'");
    return row;
  }

  void done() {
    if (at != rows.size()) throw ParseError("trailing content after 'end'");
  }
};

int parse_int(const std::string& s, const std::string& what) {
  Rational r = Rational::parse(s);
  if (!r.is_integer()) throw ParseError(what + " must be an integer");
  if (r.num() < INT32_MIN || r.num() > INT32_MAX) throw ParseError(what + " out of range");
  return static_cast<int>(r.num());
}

// Least integer q with q*q >= v.
std::int64_t ceil_sqrt(unsigned __int128 v) {
  if (v == 0) return 0;
  unsigned __int128 x = 1;
  while (x * x < v) x <<= 1;
  unsigned __int128 lo = x >> 1, hi = x;
  while (lo < hi) {
    unsigned __int128 mid = lo + (hi - lo) / 2;
    if (mid * mid >= v)
      hi = mid;
    else
      lo = mid + 1;
  }
  return static_cast<std::int64_t>(lo);
}

// Euclidean distance between rational coordinate rows, rounded up to a
// multiple of 1/denom. Rounding up preserves the triangle inequality since
// ceil is subadditive.
Rational euclidean_ceil(const std::vector<Rational>& a, const std::vector<Rational>& b,
                        std::int64_t denom) {
  // squared distance = num / den as exact rationals
  Rational sq(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational d = a[i] - b[i];
    sq += d * d;
  }
  if (sq.is_zero()) return Rational(0);
  // want least m with (m/denom)^2 >= sq  <=>  m^2 * sq.den >= sq.num * denom^2
  unsigned __int128 rhs = static_cast<unsigned __int128>(sq.num()) *
                          static_cast<unsigned __int128>(denom) * static_cast<unsigned __int128>(denom);
  unsigned __int128 den = static_cast<unsigned __int128>(sq.den());
  // m >= sqrt(rhs/den): search least m with m*m*den >= rhs
  std::int64_t m = ceil_sqrt((rhs + den - 1) / den);
  while (static_cast<unsigned __int128>(m) * static_cast<unsigned __int128>(m) * den < rhs) ++m;
  while (m > 0 &&
         static_cast<unsigned __int128>(m - 1) * static_cast<unsigned __int128>(m - 1) * den >= rhs)
    --m;
  return Rational(m, denom);
}

}  // namespace

Instance parse_instance(const std::string& text) {
  Lines in(text);
  {
    const auto& head = in.next("header");
    if (head.size() != 3 || head[0] != "privclust" || head[1] != "instance" || head[2] != "v1")
      throw ParseError("not a 'privclust instance v1' document");
  }
  Instance::Data d;
  {
    const auto& row = in.keyword("points");
    if (row.size() != 2) throw ParseError("points needs one value");
    d.num_points = parse_int(row[1], "points");
  }
  {
    const auto& row = in.keyword("locations");
    if (row.size() != 2) throw ParseError("locations needs one value");
    if (row[1] == "same") {
      d.locations_are_points = true;
    } else {
      d.locations_are_points = false;
      d.num_locations = parse_int(row[1], "locations");
    }
  }
  const int side = d.num_points + (d.locations_are_points ? 0 : d.num_locations);
  {
    const auto& row = in.keyword("metric");
    if (row.size() >= 2 && row[1] == "matrix") {
      if (row.size() != 2) throw ParseError("metric matrix takes no arguments");
      for (int a = 0; a < side; ++a) {
        const auto& mrow = in.next("matrix row");
        if (static_cast<int>(mrow.size()) != side)
          throw ParseError("matrix row " + std::to_string(a) + " needs " + std::to_string(side) +
                           " entries");
        for (int b = 0; b < side; ++b) d.matrix.push_back(Rational::parse(mrow[b]));
      }
    } else if (row.size() >= 2 && row[1] == "euclidean") {
      if (row.size() != 3 && !(row.size() == 5 && row[3] == "denominator"))
        throw ParseError("metric euclidean <dim> [denominator <D>]");
      int dim = parse_int(row[2], "dimension");
      if (dim < 1) throw ParseError("dimension must be positive");
      std::int64_t denom = 1000000;
      if (row.size() == 5) {
        Rational dr = Rational::parse(row[4]);
        if (!dr.is_integer() || dr.num() < 1) throw ParseError("denominator must be a positive integer");
        denom = dr.num();
      }
      std::vector<std::vector<Rational>> coords;
      for (int a = 0; a < side; ++a) {
        const auto& crow = in.next("coordinate row");
        if (static_cast<int>(crow.size()) != dim) throw ParseError("coordinate row needs dim entries");
        std::vector<Rational> c;
        for (const std::string& t : crow) c.push_back(Rational::parse(t));
        coords.push_back(std::move(c));
      }
      for (int a = 0; a < side; ++a)
        for (int b = 0; b < side; ++b) d.matrix.push_back(euclidean_ceil(coords[a], coords[b], denom));
    } else {
      throw ParseError("metric must be 'matrix' or 'euclidean'");
    }
  }
  {
    const auto& row = in.keyword("k");
    if (row.size() != 2) throw ParseError("k needs one value");
    d.k = parse_int(row[1], "k");
  }
  {
    const auto& row = in.keyword("ell");
    if (row.size() != 2) throw ParseError("ell needs one value");
    d.lower_bound = parse_int(row[1], "ell");
  }
  {
    const auto& row = in.keyword("outliers");
    if (row.size() != 2) throw ParseError("outliers needs one value");
    d.outlier_budget = parse_int(row[1], "outliers");
  }
  const int num_locs = d.locations_are_points ? d.num_points : d.num_locations;
  {
    const auto& row = in.keyword("capacities");
    if (row.size() == 2 && row[1] == "none") {
    } else if (row.size() == 3 && row[1] == "uniform") {
      std::int64_t u = parse_int(row[2], "capacity");
      d.capacities = std::vector<std::int64_t>(num_locs, u);
      d.capacities_uniform = true;
    } else if (row.size() >= 2 && row[1] == "list") {
      if (static_cast<int>(row.size()) != 2 + num_locs)
        throw ParseError("capacities list needs one entry per location");
      std::vector<std::int64_t> caps;
      for (int l = 0; l < num_locs; ++l) caps.push_back(parse_int(row[2 + l], "capacity"));
      d.capacities = std::move(caps);
      d.capacities_uniform = false;
    } else {
      throw ParseError("capacities must be none, uniform <u>, or list ...");
    }
  }
  {
    const auto& row = in.keyword("colors");
    if (row.size() == 2 && row[1] == "none") {
    } else if (row.size() >= 2 && row[1] == "list") {
      if (static_cast<int>(row.size()) != 2 + d.num_points)
        throw ParseError("colors list needs one entry per point");
      for (int p = 0; p < d.num_points; ++p) {
        const std::string& name = row[2 + p];
        auto it = std::find(d.color_names.begin(), d.color_names.end(), name);
        if (it == d.color_names.end()) {
          d.color_names.push_back(name);
          d.colors.push_back(static_cast<int>(d.color_names.size()) - 1);
        } else {
          d.colors.push_back(static_cast<int>(it - d.color_names.begin()));
        }
      }
    } else {
      throw ParseError("colors must be none or list ...");
    }
  }
  {
    const auto& row = in.keyword("color_ell");
    if (row.size() == 2 && row[1] == "none") {
    } else if (row.size() >= 2 && row[1] == "list") {
      if (d.colors.empty()) throw ParseError("color_ell requires colors");
      if (row.size() % 2 != 0 || row.size() < 4)
        throw ParseError("color_ell list needs name/bound pairs");
      std::vector<std::int64_t> bounds(d.color_names.size(), 0);
      std::vector<bool> seen(d.color_names.size(), false);
      for (std::size_t i = 2; i + 1 < row.size(); i += 2) {
        auto it = std::find(d.color_names.begin(), d.color_names.end(), row[i]);
        if (it == d.color_names.end()) throw ParseError("color_ell names unknown color " + row[i]);
        std::size_t c = static_cast<std::size_t>(it - d.color_names.begin());
        if (seen[c]) throw ParseError("color_ell repeats color " + row[i]);
        seen[c] = true;
        bounds[c] = parse_int(row[i + 1], "color bound");
      }
      if (static_cast<std::size_t>(std::count(seen.begin(), seen.end(), true)) != seen.size())
        throw ParseError("color_ell must list every color");
      d.color_lower_bounds = std::move(bounds);
    } else {
      throw ParseError("color_ell must be none or list ...");
    }
  }
  {
    const auto& row = in.keyword("opening_cost");
    if (row.size() != 2) throw ParseError("opening_cost needs one value");
    if (row[1] != "none") d.opening_cost = Rational::parse(row[1]);
  }
  in.keyword("end");
  in.done();
  return Instance(std::move(d));
}

std::string serialize_instance(const Instance& inst) {
  const Instance::Data& d = inst.data();
  std::ostringstream out;
  out << "privclust instance v1\n";
  out << "points " << d.num_points << "\n";
  if (d.locations_are_points)
    out << "locations same\n";
  else
    out << "locations " << d.num_locations << "\n";
  out << "metric matrix\n";
  const int side = d.num_points + (d.locations_are_points ? 0 : d.num_locations);
  for (int a = 0; a < side; ++a) {
    for (int b = 0; b < side; ++b) {
      if (b) out << ' ';
      out << d.matrix[a * side + b].str();
    }
    out << "\n";
  }
  out << "k " << d.k << "\n";
  out << "ell " << d.lower_bound << "\n";
  out << "outliers " << d.outlier_budget << "\n";
  if (!d.capacities) {
    out << "capacities none\n";
  } else if (d.capacities_uniform) {
    out << "capacities uniform " << (*d.capacities)[0] << "\n";
  } else {
    out << "capacities list";
    for (std::int64_t u : *d.capacities) out << ' ' << u;
    out << "\n";
  }
  if (d.colors.empty()) {
    out << "colors none\n";
  } else {
    out << "colors list";
    for (int c : d.colors) out << ' ' << d.color_names[c];
    out << "\n";
  }
  if (!d.color_lower_bounds) {
    out << "color_ell none\n";
  } else {
    // Name order, so the document is independent of internal color ids and
    // re-serializing a parsed document is byte-identical.
    std::vector<std::size_t> order(d.color_names.size());
    for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return d.color_names[a] < d.color_names[b]; });
    out << "color_ell list";
    for (std::size_t c : order)
      out << ' ' << d.color_names[c] << ' ' << (*d.color_lower_bounds)[c];
    out << "\n";
  }
  out << "opening_cost " << (d.opening_cost ? d.opening_cost->str() : "none") << "\n";
  out << "end\n";
  return out.str();
}

SolutionDoc parse_solution(const std::string& text) {
  Lines in(text);
  {
    const auto& head = in.next("header");
    if (head.size() != 3 || head[0] != "privclust" || head[1] != "solution" || head[2] != "v1")
      throw ParseError("not a 'privclust solution v1' document");
  }
  SolutionDoc doc;
  {
    const auto& row = in.keyword("variant");
    if (row.size() != 2) throw ParseError("variant needs one value");
    doc.variant = row[1];
  }
  {
    const auto& row = in.keyword("underlying");
    if (row.size() != 2) throw ParseError("underlying needs one value");
    doc.underlying = row[1];
  }
  int num_clusters = 0;
  {
    const auto& row = in.keyword("clusters");
    if (row.size() != 2) throw ParseError("clusters needs a count");
    num_clusters = parse_int(row[1], "cluster count");
    if (num_clusters < 0) throw ParseError("negative cluster count");
  }
  for (int j = 0; j < num_clusters; ++j) {
    const auto& row = in.keyword("cluster");
    if (row.size() < 5 || row[2] != "location" || row[4] != "points")
      throw ParseError("cluster row must read: cluster <id> location <l> points ...");
    if (parse_int(row[1], "cluster id") != j) throw ParseError("cluster ids must be sequential");
    Cluster c;
    c.location = parse_int(row[3], "cluster location");
    for (std::size_t i = 5; i < row.size(); ++i) c.members.push_back(parse_int(row[i], "member"));
    doc.clustering.clusters.push_back(std::move(c));
  }
  {
    const auto& row = in.keyword("outliers");
    if (row.size() == 2 && row[1] == "none") {
    } else if (row.size() >= 2 && row[1] == "list") {
      for (std::size_t i = 2; i < row.size(); ++i)
        doc.clustering.outliers.push_back(parse_int(row[i], "outlier"));
    } else {
      throw ParseError("outliers must be none or list ...");
    }
  }
  {
    const auto& row = in.keyword("radius");
    if (row.size() != 2) throw ParseError("radius needs one value");
    doc.clustering.radius = Rational::parse(row[1]);
  }
  {
    const auto& row = in.next("cost or end");
    if (row[0] == "cost") {
      if (row.size() != 2) throw ParseError("cost needs one value");
      doc.cost = Rational::parse(row[1]);
      in.keyword("end");
    } else if (row[0] != "end") {
      throw ParseError("expected 'cost' or 'end', found '" + row[0] + "'");
    }
  }
  in.done();
  return doc;
}

std::string serialize_solution(const SolutionDoc& doc) {
  std::ostringstream out;
  out << "privclust solution v1\n";
  out << "variant " << doc.variant << "\n";
  out << "underlying " << doc.underlying << "\n";
  out << "clusters " << doc.clustering.clusters.size() << "\n";
  for (std::size_t j = 0; j < doc.clustering.clusters.size(); ++j) {
    const Cluster& c = doc.clustering.clusters[j];
    out << "cluster " << j << " location " << c.location << " points";
    for (int p : c.members) out << ' ' << p;
    out << "\n";
  }
  if (doc.clustering.outliers.empty()) {
    out << "outliers none\n";
  } else {
    out << "outliers list";
    for (int p : doc.clustering.outliers) out << ' ' << p;
    out << "\n";
  }
  out << "radius " << doc.clustering.radius.str() << "\n";
  if (doc.cost) out << "cost " << doc.cost->str() << "\n";
  out << "end\n";
  return out.str();
}

std::string text_digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 15];
    h >>= 4;
  }
  return out;
}

}  // namespace privclust
