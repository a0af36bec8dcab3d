#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hjlab/errors.hpp"
#include "hjlab/experiments.hpp"

namespace hjlab {

using nlohmann::json;

namespace {

// Non-finite doubles are stored as null and read back as NaN.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double get_num(const json& j, const char* key) {
  const auto& v = j.at(key);
  return v.is_null() ? std::nan("") : v.get<double>();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

json sample_json(const SampleRecord& s) {
  return {{"x", num(s.x)},
          {"speed", num(s.speed)},
          {"last_segment", num(s.last_segment)},
          {"bracket_lo", num(s.bracket_lo)},
          {"bracket_hi", num(s.bracket_hi)},
          {"bracket_valid", s.bracket_valid},
          {"w_full", num(s.w_full)}};
}

SampleRecord sample_from(const json& j) {
  SampleRecord s;
  s.x = get_num(j, "x");
  s.speed = get_num(j, "speed");
  s.last_segment = get_num(j, "last_segment");
  s.bracket_lo = get_num(j, "bracket_lo");
  s.bracket_hi = get_num(j, "bracket_hi");
  s.bracket_valid = j.at("bracket_valid").get<bool>();
  s.w_full = get_num(j, "w_full");
  return s;
}

json record_json(const HorizonRecord& r) {
  json samples = json::array();
  for (const auto& s : r.samples) samples.push_back(sample_json(s));
  return {{"T", num(r.T)},
          {"dx", num(r.dx)},
          {"dt", num(r.dt)},
          {"v_max", num(r.v_max)},
          {"speed", num(r.speed)},
          {"slack", num(r.slack)},
          {"lower_bound", num(r.lower_bound)},
          {"upper_bound", num(r.upper_bound)},
          {"window_cells", r.window_cells},
          {"full_cells", r.full_cells},
          {"boundary_argmins", r.boundary_argmins},
          {"enlargements", r.enlargements},
          {"tied_contacts", r.tied_contacts},
          {"samples", samples}};
}

HorizonRecord record_from(const json& j) {
  HorizonRecord r;
  r.T = get_num(j, "T");
  r.dx = get_num(j, "dx");
  r.dt = get_num(j, "dt");
  r.v_max = get_num(j, "v_max");
  r.speed = get_num(j, "speed");
  r.slack = get_num(j, "slack");
  r.lower_bound = get_num(j, "lower_bound");
  r.upper_bound = get_num(j, "upper_bound");
  r.window_cells = j.at("window_cells").get<std::size_t>();
  r.full_cells = j.at("full_cells").get<std::size_t>();
  r.boundary_argmins = j.at("boundary_argmins").get<std::size_t>();
  r.enlargements = j.at("enlargements").get<int>();
  r.tied_contacts = j.at("tied_contacts").get<bool>();
  for (const auto& s : j.at("samples")) r.samples.push_back(sample_from(s));
  return r;
}

}  // namespace

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return !c.hard || c.pass; });
}

json report_to_json(const Report& r) {
  json series = json::array();
  for (const auto& s : r.series) {
    json recs = json::array();
    for (const auto& h : s.records) recs.push_back(record_json(h));
    json res = json::array();
    for (double v : s.fit.residuals) res.push_back(num(v));
    series.push_back({{"label", s.label},
                      {"records", recs},
                      {"fit",
                       {{"valid", s.fit.valid},
                        {"exponent", num(s.fit.exponent)},
                        {"amplitude", num(s.fit.amplitude)},
                        {"residuals", res}}},
                      {"onset", s.onset ? num(*s.onset) : json(nullptr)}});
  }
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"hard", c.hard},
                      {"pass", c.pass},
                      {"measured", num(c.measured)},
                      {"threshold", num(c.threshold)},
                      {"detail", c.detail}});
  }
  return {{"kind", r.kind},       {"version", kVersion}, {"config", r.config}, {"series", series},
          {"checks", checks},     {"extra", r.extra},    {"passed", r.passed()}};
}

Report report_from_json(const json& j) {
  try {
    Report r;
    r.kind = j.at("kind").get<std::string>();
    r.config = j.at("config");
    r.extra = j.at("extra");
    for (const auto& s : j.at("series")) {
      Series out;
      out.label = s.at("label").get<std::string>();
      for (const auto& h : s.at("records")) out.records.push_back(record_from(h));
      const auto& f = s.at("fit");
      out.fit.valid = f.at("valid").get<bool>();
      out.fit.exponent = get_num(f, "exponent");
      out.fit.amplitude = get_num(f, "amplitude");
      for (const auto& v : f.at("residuals")) out.fit.residuals.push_back(v.is_null() ? std::nan("") : v.get<double>());
      if (!s.at("onset").is_null()) out.onset = s.at("onset").get<double>();
      r.series.push_back(std::move(out));
    }
    for (const auto& c : j.at("checks")) {
      r.checks.push_back(Check{c.at("name").get<std::string>(), c.at("hard").get<bool>(),
                               c.at("pass").get<bool>(), get_num(c, "measured"),
                               get_num(c, "threshold"), c.at("detail").get<std::string>()});
    }
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("report JSON: ") + e.what());
  }
}

std::string report_csv(const Report& r) {
  std::ostringstream os;
  os << "series,T,x,dx,dt,speed,last_segment,bracket_lo,bracket_hi,bracket_valid,w_full,v_T,lower_bound,upper_bound\n";
  for (const auto& s : r.series) {
    for (const auto& h : s.records) {
      for (const auto& m : h.samples) {
        os << s.label << ',' << fmt(h.T) << ',' << fmt(m.x) << ',' << fmt(h.dx) << ',' << fmt(h.dt) << ','
           << fmt(m.speed) << ',' << fmt(m.last_segment) << ',' << fmt(m.bracket_lo) << ','
           << fmt(m.bracket_hi) << ',' << (m.bracket_valid ? 1 : 0) << ',' << fmt(m.w_full) << ','
           << fmt(h.speed) << ',' << fmt(h.lower_bound) << ',' << fmt(h.upper_bound) << '\n';
      }
    }
  }
  return os.str();
}

std::string report_svg(const Report& r) {
  const double beta = r.config.is_object() ? r.config.value("beta", 2.0) : 2.0;
  const double W = 640, H = 400, L = 60, R = 20, Tm = 20, B = 50;
  auto absc = [beta](double T) { return std::pow(std::log(T), 2.0 / beta); };

  double xmin = kInf, xmax = -kInf, ymin = 0.0, ymax = -kInf;
  for (const auto& s : r.series) {
    for (const auto& h : s.records) {
      if (!(h.T > 1.0)) continue;
      xmin = std::min(xmin, absc(h.T));
      xmax = std::max(xmax, absc(h.T));
      ymax = std::max({ymax, h.lower_bound, h.upper_bound});
      for (const auto& m : h.samples) ymax = std::max(ymax, m.speed);
    }
  }
  if (!(xmin < xmax)) {
    xmin = std::isfinite(xmin) ? xmin - 1.0 : 0.0;
    xmax = xmin + 2.0;
  }
  if (!(ymax > ymin)) ymax = 1.0;
  ymax *= 1.05;
  auto px = [&](double v) { return L + (v - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double v) { return H - B - (v - ymin) / (ymax - ymin) * (H - Tm - B); };

  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  os << "<title>" << r.kind << "</title>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << Tm << "\" x2=\"" << L << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << (W + L) / 2 << "\" y=\"" << H - 12
     << "\" text-anchor=\"middle\" font-size=\"12\">(log T)^(2/beta)</text>\n";
  os << "<text x=\"14\" y=\"" << (H - B + Tm) / 2
     << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 14 " << (H - B + Tm) / 2
     << ")\">terminal speed</text>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = xmin + (xmax - xmin) * k / 4.0, yv = ymin + (ymax - ymin) * k / 4.0;
    os << "<text x=\"" << fmt_short(px(xv)) << "\" y=\"" << H - B + 16
       << "\" text-anchor=\"middle\" font-size=\"10\">" << fmt_short(xv) << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << fmt_short(py(yv) + 3)
       << "\" text-anchor=\"end\" font-size=\"10\">" << fmt_short(yv) << "</text>\n";
  }

  auto polyline = [&](const std::vector<std::pair<double, double>>& pts, const std::string& cls,
                      const std::string& color, const std::string& label, bool dashed) {
    os << "<g class=\"" << cls << "\" data-label=\"" << label << "\">\n<polyline fill=\"none\" stroke=\"" << color
       << "\"" << (dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      os << (i ? " " : "") << fmt_short(px(pts[i].first)) << ',' << fmt_short(py(pts[i].second));
    }
    os << "\"/>\n";
    if (!dashed) {
      for (const auto& pt : pts) {
        os << "<circle cx=\"" << fmt_short(px(pt.first)) << "\" cy=\"" << fmt_short(py(pt.second))
           << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      }
    }
    os << "</g>\n";
  };

  std::size_t color = 0;
  for (const auto& s : r.series) {
    std::size_t nsamples = 0;
    for (const auto& h : s.records) nsamples = std::max(nsamples, h.samples.size());
    for (std::size_t m = 0; m < nsamples; ++m) {
      std::vector<std::pair<double, double>> pts;
      for (const auto& h : s.records) {
        if (h.T > 1.0 && m < h.samples.size()) pts.emplace_back(absc(h.T), h.samples[m].speed);
      }
      polyline(pts, "series", palette[color++ % 10], s.label + " sample " + std::to_string(m), false);
    }
  }
  std::vector<std::pair<double, double>> lower, upper;
  if (!r.series.empty()) {
    for (const auto& h : r.series.front().records) {
      if (!(h.T > 1.0)) continue;
      lower.emplace_back(absc(h.T), h.lower_bound);
      upper.emplace_back(absc(h.T), h.upper_bound);
    }
  }
  polyline(lower, "bound", "#000000", "lower bound", true);
  polyline(upper, "bound", "#555555", "upper bound (advisory)", true);
  os << "</svg>\n";
  return os.str();
}

std::vector<std::filesystem::path> emit(const Report& r, const std::filesystem::path& dir,
                                        const std::string& stem) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw std::runtime_error("write failed: " + path.string());
  };
  std::vector<std::filesystem::path> out{dir / (stem + ".json"), dir / (stem + ".csv"),
                                         dir / (stem + ".svg"), dir / (stem + ".timing.json")};
  write(out[0], report_to_json(r).dump(2) + "\n");
  write(out[1], report_csv(r));
  write(out[2], report_svg(r));
  json timing = json::object();
  for (const auto& [label, seconds] : r.timings) timing[label] = seconds;
  write(out[3], timing.dump(2) + "\n");
  return out;
}

}  // namespace hjlab
