#include "statgeo/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "statgeo/error.hpp"
#include "statgeo/shapes.hpp"

namespace statgeo::io {

using nlohmann::json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw Error("cannot write '" + path + "'");
}

Shape parse_shape(const std::string& text, const std::string& fallback_name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidShape(std::string("shape document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rings") || !doc["rings"].is_array()) {
    throw InvalidShape("shape document needs a \"rings\" array");
  }
  std::vector<Ring> rings;
  for (const json& r : doc["rings"]) {
    if (!r.is_array() || r.size() < 3) throw InvalidShape("every ring needs at least 3 vertices");
    std::vector<Point> pts;
    for (const json& v : r) {
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw InvalidShape("ring vertices must be [x, y] number pairs");
      }
      pts.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    rings.emplace_back(std::move(pts));
  }
  std::string name = fallback_name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw InvalidShape("\"name\" must be a string");
    name = doc["name"].get<std::string>();
  }
  return Shape(std::move(rings), std::move(name));
}

std::string shape_json(const Shape& shape) {
  json rings = json::array();
  for (const Ring& r : shape.rings()) {
    json ring = json::array();
    for (Point p : r.vertices()) ring.push_back({p.x, p.y});
    rings.push_back(std::move(ring));
  }
  return json{{"name", shape.name()}, {"rings", rings}}.dump(1) + "\n";
}

Shape load_shape(const std::string& spec) {
  constexpr std::string_view prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) return shapes::builtin(spec.substr(prefix.size()));
  if (spec.rfind("word:", 0) == 0) return word_shape(spec.substr(5)).shape;
  std::string stem = spec.substr(spec.find_last_of('/') + 1);
  stem = stem.substr(0, stem.find('.'));
  return parse_shape(read_file(spec), stem);
}

std::vector<DictEntry> parse_dictionary(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("dictionary is not valid JSON: ") + e.what());
  }
  if (!doc.is_array() || doc.empty()) throw InvalidArgument("dictionary must be a non-empty array");
  std::vector<DictEntry> dict;
  for (const json& j : doc) {
    DictEntry e;
    try {
      e.name = j.at("name").get<std::string>();
      e.p_ref = j.at("p_ref").get<double>();
      e.a_ref = j.at("a_ref").get<double>();
      e.sigma0_a = j.at("sigma0_a").get<double>();
      e.sigma0_p = j.at("sigma0_p").get<double>();
      e.corr = j.value("corr", 0.0);
    } catch (const json::exception& ex) {
      throw InvalidArgument(std::string("malformed dictionary entry: ") + ex.what());
    }
    validate(e);
    dict.push_back(std::move(e));
  }
  return dict;
}

std::string dictionary_json(std::span<const DictEntry> dict) {
  json doc = json::array();
  for (const DictEntry& e : dict) {
    doc.push_back({{"name", e.name},
                   {"p_ref", e.p_ref},
                   {"a_ref", e.a_ref},
                   {"sigma0_a", e.sigma0_a},
                   {"sigma0_p", e.sigma0_p},
                   {"corr", e.corr}});
  }
  return doc.dump(1) + "\n";
}

std::vector<DictEntry> load_dictionary(const std::string& path) { return parse_dictionary(read_file(path)); }

namespace {

json report_object(const EstimateReport& r) {
  return {{"N", r.N},
          {"area_hat", r.area_hat},
          {"perim_hat", r.perim_hat},
          {"mean_chord", r.mean_chord},
          {"stderr_a", r.stderr_A},
          {"stderr_p", r.stderr_P},
          {"corr_ap", r.corr_AP},
          {"stderr_valid", r.stderr_valid},
          {"n_hit", r.n_hit},
          {"rejected_lines", r.rejected_lines}};
}

}  // namespace

std::string report_json(const EstimateReport& report) { return report_object(report).dump(1) + "\n"; }

std::string posterior_json(const Posterior& post, const EstimateReport& report, bool stopped) {
  json probs = json::object();
  for (const auto& [name, p] : post.probs) probs[name] = p;
  return json{{"top", post.top}, {"top_prob", post.top_prob}, {"stopped", stopped}, {"posterior", probs},
              {"report", report_object(report)}}
             .dump(1) +
         "\n";
}

std::string landscape_csv(const LandscapeGrid& grid) {
  std::string out = "p,a,label\n";
  for (std::size_t ia = 0; ia < grid.a_axis.size(); ++ia) {
    for (std::size_t ip = 0; ip < grid.p_axis.size(); ++ip) {
      const int l = grid.label(ip, ia);
      out += num(grid.p_axis[ip]) + "," + num(grid.a_axis[ia]) + "," +
             (l < 0 ? std::string() : grid.names[static_cast<std::size_t>(l)]) + "\n";
    }
  }
  return out;
}

std::string convergence_csv(const ConvergenceSeries& series) {
  std::string out = "N,sigma_A,sigma_P\n";
  for (const ConvergenceSample& s : series.samples) {
    out += num(s.N) + "," + num(s.sigma_A) + "," + num(s.sigma_P) + "\n";
  }
  return out;
}

std::string alphabet_csv(const Alphabet& alphabet) {
  const double s = alphabet.cell();
  std::string out = "letter,area,perimeter\n";
  for (char c = 'A'; c <= 'Z'; ++c) {
    const Shape& l = alphabet.letter(c);
    out += std::string(1, c) + "," + num(exact_area(l) / (s * s)) + "," + num(exact_perimeter(l) / s) + "\n";
  }
  return out;
}

void write_observation_header(std::ostream& os) { os << "theta,p,k,L1,L3,chords\n"; }

void write_observation(std::ostream& os, const LineParam& line, const LineObservation& obs) {
  os << num(line.theta) << ',' << num(line.p) << ',' << obs.k << ',' << num(obs.L1) << ',' << num(obs.L3) << ',';
  for (std::size_t i = 0; i < obs.chords.size(); ++i) os << (i ? ";" : "") << num(obs.chords[i]);
  os << '\n';
}

namespace {

constexpr std::array<const char*, 8> kPalette = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                                 "#66a61e", "#e6ab02", "#a6761d", "#666666"};

// Maps a data box onto a fixed-size canvas, y pointing up.
struct Canvas {
  double x0, y0, x1, y1;
  double width = 640.0;
  double height = 480.0;
  double pad = 40.0;

  double X(double x) const { return pad + (x - x0) / (x1 - x0) * (width - 2 * pad); }
  double Y(double y) const { return height - pad - (y - y0) / (y1 - y0) * (height - 2 * pad); }
  double sx() const { return (width - 2 * pad) / (x1 - x0); }
  double sy() const { return (height - 2 * pad) / (y1 - y0); }

  std::string open() const {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
           "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }
};

std::string ring_path(const Canvas& c, std::span<const Ring> rings) {
  std::string d;
  for (const Ring& r : rings) {
    const auto& v = r.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) d += (i ? "L" : "M") + num(c.X(v[i].x)) + " " + num(c.Y(v[i].y)) + " ";
    d += "Z ";
  }
  return "<path d=\"" + d + "\" fill=\"#4a7ab5\" fill-rule=\"evenodd\" stroke=\"black\" stroke-width=\"1\"/>\n";
}

std::string axes(const Canvas& c, const std::string& xlabel, const std::string& ylabel) {
  std::string s = "<rect x=\"" + num(c.pad) + "\" y=\"" + num(c.pad) + "\" width=\"" + num(c.width - 2 * c.pad) +
                  "\" height=\"" + num(c.height - 2 * c.pad) + "\" fill=\"none\" stroke=\"black\"/>\n";
  s += "<text x=\"" + num(c.width / 2) + "\" y=\"" + num(c.height - 8) + "\" font-size=\"12\">" + xlabel + "</text>\n";
  s += "<text x=\"8\" y=\"" + num(c.height / 2) + "\" font-size=\"12\">" + ylabel + "</text>\n";
  return s;
}

}  // namespace

std::string dictionary_svg(std::span<const DictEntry> dict, double N, const EstimateReport* point) {
  double pmin = 1e300, pmax = -1e300, amin = 1e300, amax = -1e300;
  std::vector<std::array<Ellipse, 3>> ells;
  for (const DictEntry& e : dict) {
    ells.push_back({confidence_ellipse(e, N, 0.75), confidence_ellipse(e, N, 0.95), confidence_ellipse(e, N, 0.99)});
    const Ellipse& big = ells.back()[2];
    pmin = std::min(pmin, e.p_ref - big.semi_major);
    pmax = std::max(pmax, e.p_ref + big.semi_major);
    amin = std::min(amin, e.a_ref - big.semi_major);
    amax = std::max(amax, e.a_ref + big.semi_major);
  }
  if (point != nullptr) {
    pmin = std::min(pmin, point->perim_hat);
    pmax = std::max(pmax, point->perim_hat);
    amin = std::min(amin, point->area_hat);
    amax = std::max(amax, point->area_hat);
  }
  const Canvas c{pmin, amin, pmax, amax};
  std::string s = c.open() + axes(c, "perimeter", "area");
  for (std::size_t i = 0; i < dict.size(); ++i) {
    const char* col = kPalette[i % kPalette.size()];
    for (const Ellipse& e : ells[i]) {
      // Sampled outline; the two axes scale differently on the canvas.
      std::string d;
      for (int k = 0; k <= 72; ++k) {
        const double t = 2.0 * 3.14159265358979323846 * k / 72.0;
        const double u = e.semi_major * std::cos(t);
        const double v = e.semi_minor * std::sin(t);
        const double p = e.center_p + u * std::cos(e.angle) - v * std::sin(e.angle);
        const double a = e.center_a + u * std::sin(e.angle) + v * std::cos(e.angle);
        d += (k ? "L" : "M") + num(c.X(p)) + " " + num(c.Y(a)) + " ";
      }
      s += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + col + "\"/>\n";
    }
    s += "<text x=\"" + num(c.X(dict[i].p_ref) + 4) + "\" y=\"" + num(c.Y(dict[i].a_ref) - 4) +
         "\" font-size=\"11\">" + dict[i].name + "</text>\n";
  }
  if (point != nullptr) {
    s += "<circle cx=\"" + num(c.X(point->perim_hat)) + "\" cy=\"" + num(c.Y(point->area_hat)) +
         "\" r=\"3\" fill=\"black\"/>\n";
  }
  return s + "</svg>\n";
}

std::string landscape_svg(const LandscapeGrid& grid, std::span<const DictEntry> dict) {
  const Canvas c{grid.p_axis.front(), grid.a_axis.front(), grid.p_axis.back(), grid.a_axis.back()};
  const double w = c.sx() * (grid.p_axis[1] - grid.p_axis[0]);
  const double h = c.sy() * (grid.a_axis[1] - grid.a_axis[0]);
  std::string s = c.open();
  for (std::size_t ia = 0; ia < grid.a_axis.size(); ++ia) {
    for (std::size_t ip = 0; ip < grid.p_axis.size(); ++ip) {
      const int l = grid.label(ip, ia);
      if (l < 0) continue;
      s += "<rect x=\"" + num(c.X(grid.p_axis[ip]) - w / 2) + "\" y=\"" + num(c.Y(grid.a_axis[ia]) - h / 2) +
           "\" width=\"" + num(w) + "\" height=\"" + num(h) + "\" fill=\"" +
           kPalette[static_cast<std::size_t>(l) % kPalette.size()] + "\"/>\n";
    }
  }
  for (const DictEntry& e : dict) {
    s += "<circle cx=\"" + num(c.X(e.p_ref)) + "\" cy=\"" + num(c.Y(e.a_ref)) + "\" r=\"3\" fill=\"black\"/>\n";
    s += "<text x=\"" + num(c.X(e.p_ref) + 4) + "\" y=\"" + num(c.Y(e.a_ref) - 4) + "\" font-size=\"11\">" + e.name +
         "</text>\n";
  }
  return s + axes(c, "perimeter", "area") + "</svg>\n";
}

std::string alphabet_svg(const Alphabet& alphabet) {
  const double s = alphabet.cell();
  double amin = 1e300, amax = -1e300, pmin = 1e300, pmax = -1e300;
  for (char ch = 'A'; ch <= 'Z'; ++ch) {
    const double a = exact_area(alphabet.letter(ch)) / (s * s);
    const double p = exact_perimeter(alphabet.letter(ch)) / s;
    amin = std::min(amin, a), amax = std::max(amax, a), pmin = std::min(pmin, p), pmax = std::max(pmax, p);
  }
  const Canvas c{pmin - 1, amin - 1, pmax + 1, amax + 1};
  std::string out = c.open() + axes(c, "perimeter / s", "area / s^2");
  for (char ch = 'A'; ch <= 'Z'; ++ch) {
    const double a = exact_area(alphabet.letter(ch)) / (s * s);
    const double p = exact_perimeter(alphabet.letter(ch)) / s;
    out += "<text x=\"" + num(c.X(p)) + "\" y=\"" + num(c.Y(a)) + "\" font-size=\"14\" text-anchor=\"middle\">" +
           std::string(1, ch) + "</text>\n";
  }
  return out + "</svg>\n";
}

std::string shape_svg(const Shape& shape, const ArenaCircle* arena) {
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  for (const Ring& r : shape.rings()) {
    for (Point p : r.vertices()) x0 = std::min(x0, p.x), y0 = std::min(y0, p.y), x1 = std::max(x1, p.x), y1 = std::max(y1, p.y);
  }
  if (arena != nullptr) {
    x0 = std::min(x0, arena->center.x - arena->radius), x1 = std::max(x1, arena->center.x + arena->radius);
    y0 = std::min(y0, arena->center.y - arena->radius), y1 = std::max(y1, arena->center.y + arena->radius);
  }
  // Equal scale on both axes.
  const double span = std::max(x1 - x0, y1 - y0);
  Canvas c{x0, y0, x0 + span, y0 + span};
  c.width = c.height = 520.0;
  std::string s = c.open() + ring_path(c, shape.rings());
  if (arena != nullptr) {
    s += "<circle cx=\"" + num(c.X(arena->center.x)) + "\" cy=\"" + num(c.Y(arena->center.y)) + "\" r=\"" +
         num(arena->radius * c.sx()) + "\" fill=\"none\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  }
  return s + "</svg>\n";
}

}  // namespace statgeo::io
