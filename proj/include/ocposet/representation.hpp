#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "interval.hpp"
#include "poset.hpp"

namespace ocposet {

// Placement of every element's typed unit interval (length fixed at 2).
struct Representation {
  std::map<std::string, PlacedInterval> intervals;
  TypeSet allowed;
};

inline Representation cd_swap(const Representation& r) {
  Representation out;
  out.allowed = r.allowed.swap_cd();
  for (const auto& [name, iv] : r.intervals) {
    IntervalType t = iv.type;
    if (t == IntervalType::C)
      t = IntervalType::D;
    else if (t == IntervalType::D)
      t = IntervalType::C;
    out.intervals.emplace(name, PlacedInterval{iv.center, t});
  }
  return out;
}

inline Representation translated(const Representation& r, const Dyadic& offset) {
  Representation out;
  out.allowed = r.allowed;
  for (const auto& [name, iv] : r.intervals)
    out.intervals.emplace(name, PlacedInterval{iv.center + offset, iv.type});
  return out;
}

inline Poset induced_poset(const Representation& r, const std::vector<std::string>& elements) {
  std::vector<const PlacedInterval*> ivs;
  ivs.reserve(elements.size());
  for (const auto& e : elements) {
    auto it = r.intervals.find(e);
    if (it == r.intervals.end()) fail(Errc::unknown_name, "no interval for element '" + e + "'");
    ivs.push_back(&it->second);
  }
  int n = static_cast<int>(elements.size());
  std::vector<std::pair<std::string, std::string>> strict;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && precedes(*ivs[i], *ivs[j])) strict.emplace_back(elements[i], elements[j]);
  // Transitivity is a theorem for length-2 intervals; verify rather than close.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (i != j && j != k && i != k && precedes(*ivs[i], *ivs[j]) &&
            precedes(*ivs[j], *ivs[k]) && !precedes(*ivs[i], *ivs[k]))
          fail(Errc::non_transitive_witness, "induced relation not transitive at (" + elements[i] +
                                                 "," + elements[j] + "," + elements[k] + ")");
  return Poset::from_relations(elements, strict);
}

inline Poset induced_poset(const Representation& r) {
  std::vector<std::string> elements;
  elements.reserve(r.intervals.size());
  for (const auto& [name, iv] : r.intervals) elements.push_back(name);
  return induced_poset(r, elements);
}

struct Mismatch {
  std::string a, b;
  Rel expected;  // per the target poset
  Rel actual;    // per the representation
};

struct ValidationReport {
  bool ok = false;
  std::vector<std::string> type_violations;  // elements typed outside the allowed set
  std::vector<Mismatch> mismatches;
};

inline ValidationReport validate(const Representation& r, const Poset& p, TypeSet allowed) {
  if (static_cast<int>(r.intervals.size()) != p.size())
    fail(Errc::element_mismatch, "representation covers a different element count");
  for (const auto& [name, iv] : r.intervals)
    if (!p.contains(name)) fail(Errc::element_mismatch, "representation names unknown '" + name + "'");
  ValidationReport rep;
  for (const auto& [name, iv] : r.intervals)
    if (!allowed.contains(iv.type)) rep.type_violations.push_back(name);
  int n = p.size();
  for (int i = 0; i < n; ++i) {
    const PlacedInterval& a = r.intervals.at(p.name(i));
    for (int j = i + 1; j < n; ++j) {
      const PlacedInterval& b = r.intervals.at(p.name(j));
      Rel actual = precedes(a, b)   ? Rel::before
                   : precedes(b, a) ? Rel::after
                                    : Rel::incomparable;
      if (actual != p.rel(i, j))
        rep.mismatches.push_back({p.name(i), p.name(j), p.rel(i, j), actual});
    }
  }
  rep.ok = rep.type_violations.empty() && rep.mismatches.empty();
  return rep;
}

// Joins disjoint representations left to right: each later block is shifted so
// its minimum center sits 2 above the previous block's maximum, making every
// cross-block pair comparable regardless of types.
inline Representation concatenate(const std::vector<Representation>& reps) {
  Representation out;
  bool first = true;
  Dyadic prev_max;
  for (const auto& r : reps) {
    if (r.intervals.empty()) continue;
    Dyadic lo = r.intervals.begin()->second.center, hi = lo;
    for (const auto& [name, iv] : r.intervals) {
      lo = std::min(lo, iv.center);
      hi = std::max(hi, iv.center);
    }
    Dyadic offset = first ? Dyadic(0) : prev_max + 2 - lo;
    for (const auto& [name, iv] : r.intervals) {
      if (!out.intervals.emplace(name, PlacedInterval{iv.center + offset, iv.type}).second)
        fail(Errc::name_collision, "element '" + name + "' appears in two blocks");
    }
    out.allowed = TypeSet(out.allowed.mask() | r.allowed.mask());
    prev_max = hi + offset;
    first = false;
  }
  return out;
}

enum class RenderFormat { ascii, svg };

namespace detail {

inline std::vector<std::pair<std::string, PlacedInterval>> render_order(const Representation& r) {
  std::vector<std::pair<std::string, PlacedInterval>> rows(r.intervals.begin(), r.intervals.end());
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second.center != b.second.center) return a.second.center < b.second.center;
    return a.first < b.first;
  });
  return rows;
}

inline std::string render_ascii(const Representation& r) {
  if (r.intervals.empty()) return "";
  auto rows = render_order(r);
  Dyadic cmin = rows.front().second.center;
  std::size_t name_w = 0;
  for (const auto& [name, iv] : rows) name_w = std::max(name_w, name.size());
  constexpr long long unit = 8;  // characters per length unit
  std::string out;
  for (const auto& [name, iv] : rows) {
    long long left = (iv.center - cmin).floor_scaled(unit);  // offset of c-1, shifted by +unit
    std::string line(name);
    line.append(name_w - name.size() + 2, ' ');
    std::size_t base = line.size();
    line.append(left + 2 * unit + 1, ' ');
    for (long long k = 1; k < 2 * unit; ++k) line[base + left + k] = '-';
    line[base + left] = endpoint_open(iv.type) ? '(' : '[';
    line[base + left + 2 * unit] = endpoint_open(iv.type) ? ')' : ']';
    line[base + left + unit] = center_open(iv.type) ? 'o' : '*';
    line += "  ";
    line += type_letter(iv.type);
    line += " @ ";
    line += iv.center.str();
    out += line;
    out += '\n';
  }
  return out;
}

inline std::string render_svg(const Representation& r) {
  if (r.intervals.empty()) return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"0\" height=\"0\"/>\n";
  auto rows = render_order(r);
  Dyadic cmin = rows.front().second.center, cmax = cmin;
  for (const auto& [name, iv] : rows) cmax = std::max(cmax, iv.center);
  constexpr long long px = 100;  // pixels per length unit
  const long long margin = 30;
  long long width = (cmax - cmin).floor_scaled(px) + 2 * px + 2 * margin;
  long long height = 40 * static_cast<long long>(rows.size()) + 20;
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\">\n";
  out += "<g stroke=\"black\" stroke-width=\"2\" font-family=\"monospace\" font-size=\"13\">\n";
  long long y = 30;
  for (const auto& [name, iv] : rows) {
    // x = margin + (c - cmin + unit_off) * px, emitted as an exact decimal.
    auto xpos = [&](long long unit_off) {
      std::string dec = (iv.center - cmin + Dyadic(unit_off)).decimal_scaled(px);
      std::string intpart = dec, frac;
      if (auto dot = dec.find('.'); dot != std::string::npos) {
        intpart = dec.substr(0, dot);
        frac = dec.substr(dot);
      }
      return std::to_string(std::stoll(intpart) + margin) + frac;
    };
    std::string xa = xpos(0), xc = xpos(1), xb = xpos(2);
    std::string ys = std::to_string(y);
    out += "<line x1=\"" + xa + "\" y1=\"" + ys + "\" x2=\"" + xb + "\" y2=\"" + ys + "\"/>\n";
    for (const std::string& xe : {xa, xb}) {
      if (endpoint_open(iv.type)) {
        bool left_end = xe == xa;
        std::string bend = left_end ? "8" : "-8";
        out += "<path fill=\"none\" d=\"M " + xe + " " + std::to_string(y - 10) + " q " + bend +
               " 10 0 20\"/>\n";
      } else {
        out += "<line x1=\"" + xe + "\" y1=\"" + std::to_string(y - 10) + "\" x2=\"" + xe +
               "\" y2=\"" + std::to_string(y + 10) + "\"/>\n";
      }
    }
    out += "<circle cx=\"" + xc + "\" cy=\"" + ys + "\" r=\"4\" fill=\"" +
           (center_open(iv.type) ? std::string("white") : std::string("black")) + "\"/>\n";
    out += "<text stroke=\"none\" x=\"" + xb + "\" y=\"" + std::to_string(y + 4) +
           "\" dx=\"12\">" + name + " (" + type_letter(iv.type) + " @ " + iv.center.str() +
           ")</text>\n";
    y += 40;
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace detail

inline std::string render(const Representation& r, RenderFormat format) {
  return format == RenderFormat::ascii ? detail::render_ascii(r) : detail::render_svg(r);
}

}  // namespace ocposet
