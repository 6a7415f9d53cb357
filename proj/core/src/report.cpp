#include "normdyn/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "normdyn/version.hpp"

namespace normdyn {

using nlohmann::json;

std::string format_number(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

// -- structured -------------------------------------------------------------

json result_to_json(const GradientResult& r) {
  const auto& t = r.transitions;
  return json{{"G", r.gradient.g},        {"Pi_C", t.payoffs.pi_c}, {"Pi_D", t.payoffs.pi_d},
              {"T_plus", t.t_plus},       {"T_minus", t.t_minus},   {"T_zero", t.t_zero}};
}

json result_to_json(const StationaryResult& r) {
  return json{{"method", std::string(to_string(r.method))}, {"sigma", r.sigma.sigma}};
}

json result_to_json(const AnalyzeResult& r) {
  json roots = json::array();
  for (const auto& root : r.report.interior_roots)
    roots.push_back({{"k", root.k}, {"stability", std::string(to_string(root.stability))}});
  json split = nullptr;
  if (r.report.mass_split)
    split = {{"below", r.report.mass_split->below},
             {"above", r.report.mass_split->above},
             {"threshold", r.report.mass_split->threshold}};
  return json{{"gradient", r.gradient.g},
              {"sigma", r.sigma.sigma},
              {"pi_c", r.transitions.payoffs.pi_c},
              {"pi_d", r.transitions.payoffs.pi_d},
              {"t_plus", r.transitions.t_plus},
              {"t_minus", r.transitions.t_minus},
              {"regime", std::string(to_string(r.report.regime))},
              {"neutral", r.report.neutral},
              {"interior_roots", roots},
              {"mass_split", split}};
}

namespace {

json axis_json(const AxisSpec& a, const std::vector<double>& values) {
  return json{{"axis", std::string(to_string(a.axis))}, {"min", a.lo}, {"max", a.hi}, {"values", values}};
}

constexpr std::array<Regime, 4> kRegimes = {Regime::all_defect, Regime::bistable_defect_dominant,
                                            Regime::bistable_polymorphic_dominant, Regime::all_cooperate};

}  // namespace

json result_to_json(const SweepGrid& g) {
  json cells = json::array();
  for (const auto& row : g.cells) {
    json r = json::array();
    for (Regime reg : row) r.push_back(std::string(to_string(reg)));
    cells.push_back(std::move(r));
  }
  json counts = json::object();
  for (Regime reg : kRegimes) counts[std::string(to_string(reg))] = g.count(reg);
  return json{{"x_axis", axis_json(g.x_axis, g.x_values)},
              {"y_axis", axis_json(g.y_axis, g.y_values)},
              {"resolution", g.x_values.size()},
              {"cells", cells},
              {"counts", counts}};
}

json result_to_json(const SimulateResult& r, const SimConfig& cfg) {
  return json{{"mode", std::string(to_string(cfg.mode))},
              {"extension", cfg.mode == SimMode::sampled_groups},
              {"mutation", std::string(to_string(cfg.mutation))},
              {"steps", cfg.steps},
              {"burn_in", cfg.burn_in},
              {"seed", cfg.seed},
              {"replicates", r.replicates},
              {"initial_cooperators", cfg.initial_cooperators < 0 ? cfg.params.Z / 2 : cfg.initial_cooperators},
              {"group_draws", cfg.group_draws},
              {"occupancy", r.sim.occupancy},
              {"final_state", r.sim.final_state},
              {"mean_k", r.sim.mean_k},
              {"thresholds", cfg.thresholds},
              {"crossings", r.sim.crossings}};
}

json result_to_json(const ScanReport& r) {
  json first = nullptr;
  if (r.first_violation)
    first = {{"k", r.first_violation->k}, {"value", r.first_violation->value}, {"delta", r.first_violation->delta}};
  return json{{"axis", std::string(to_string(r.axis))},
              {"expected_direction", r.expected_direction > 0 ? "increasing" : "decreasing"},
              {"grid", r.grid},
              {"t_plus", r.t_plus},
              {"violations", r.violations},
              {"flat_steps", r.flat_steps},
              {"first_violation", first},
              {"holds", r.holds()}};
}

json run_meta(const RunSpec& spec) {
  json meta{{"engine", "normdyn"}, {"version", kVersion}};
  if (spec.command == Command::simulate) {
    meta["rng"] = std::string(kRngAlgorithm);
    meta["seed"] = spec.sim.seed;
  }
  if (spec.command == Command::stationary && spec.method == StationaryMethod::power_iteration) {
    meta["tol"] = spec.power.tol;
    meta["max_steps"] = spec.power.max_steps;
    meta["initial_state"] = spec.power.initial_state;
  }
  return meta;
}

json to_json(const RunSpec& spec, const RunResult& result) {
  json body = std::visit(
      [&](const auto& r) -> json {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, SimulateResult>)
          return result_to_json(r, spec.sim);
        else
          return result_to_json(r);
      },
      result);
  return json{{"params", params_to_json(spec.params)},
              {"command", std::string(to_string(spec.command))},
              {"result", std::move(body)},
              {"meta", run_meta(spec)}};
}

// -- csv --------------------------------------------------------------------

namespace {

class CsvWriter {
 public:
  void comment(const std::string& line) { out_ << "# " << line << '\n'; }

  template <typename... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
    out_ << '\n';
  }

  std::string str() const { return out_.str(); }

 private:
  static std::string cell(double v) { return format_number(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(long v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }
  static std::string cell(std::string_view v) { return std::string(v); }

  std::ostringstream out_;
};

std::string params_line(const Params& p) {
  return "params: Z=" + std::to_string(p.Z) + " N=" + std::to_string(p.N) + " b=" + format_number(p.b) +
         " c=" + format_number(p.c) + " r=" + format_number(p.r) + " m=" + format_number(p.m) +
         " p_star=" + format_number(p.p_star) + " lambda=" + format_number(p.lambda) + " mu=" + format_number(p.mu) +
         " weighting=" + std::string(to_string(p.weighting));
}

void write_header(CsvWriter& w, const RunSpec& spec) {
  w.comment(std::string("normdyn ") + kVersion);
  w.comment("command: " + std::string(to_string(spec.command)));
  w.comment(params_line(spec.params));
}

}  // namespace

std::string to_csv(const RunSpec& spec, const RunResult& result) {
  CsvWriter w;
  write_header(w, spec);
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, GradientResult>) {
          const auto& t = r.transitions;
          w.row("k", "G", "Pi_C", "Pi_D", "T_plus", "T_minus");
          for (std::size_t k = 0; k < r.gradient.g.size(); ++k)
            w.row(static_cast<int>(k), r.gradient.g[k], t.payoffs.pi_c[k], t.payoffs.pi_d[k], t.t_plus[k],
                  t.t_minus[k]);
        } else if constexpr (std::is_same_v<T, StationaryResult>) {
          w.comment("method: " + std::string(to_string(r.method)));
          w.row("k", "sigma");
          for (std::size_t k = 0; k < r.sigma.sigma.size(); ++k) w.row(static_cast<int>(k), r.sigma.sigma[k]);
        } else if constexpr (std::is_same_v<T, AnalyzeResult>) {
          w.comment("regime: " + std::string(to_string(r.report.regime)) + (r.report.neutral ? " (neutral)" : ""));
          for (const auto& root : r.report.interior_roots)
            w.comment("root: k=" + format_number(root.k) + " " + std::string(to_string(root.stability)));
          if (r.report.mass_split)
            w.comment("mass_split: below=" + format_number(r.report.mass_split->below) +
                      " above=" + format_number(r.report.mass_split->above) +
                      " threshold=" + format_number(r.report.mass_split->threshold));
          w.row("k", "G", "sigma", "Pi_C", "Pi_D");
          for (std::size_t k = 0; k < r.gradient.g.size(); ++k)
            w.row(static_cast<int>(k), r.gradient.g[k], r.sigma.sigma[k], r.transitions.payoffs.pi_c[k],
                  r.transitions.payoffs.pi_d[k]);
        } else if constexpr (std::is_same_v<T, SweepGrid>) {
          w.comment("x_axis: " + std::string(to_string(r.x_axis.axis)) + " [" + format_number(r.x_axis.lo) + ", " +
                    format_number(r.x_axis.hi) + "]");
          w.comment("y_axis: " + std::string(to_string(r.y_axis.axis)) + " [" + format_number(r.y_axis.lo) + ", " +
                    format_number(r.y_axis.hi) + "]");
          w.comment("resolution: " + std::to_string(r.x_values.size()));
          w.row("x", "y", "regime");
          for (std::size_t iy = 0; iy < r.y_values.size(); ++iy)
            for (std::size_t ix = 0; ix < r.x_values.size(); ++ix)
              w.row(r.x_values[ix], r.y_values[iy], to_string(r.cells[iy][ix]));
        } else if constexpr (std::is_same_v<T, SimulateResult>) {
          const auto& cfg = spec.sim;
          w.comment("mode: " + std::string(to_string(cfg.mode)) +
                    (cfg.mode == SimMode::sampled_groups ? " (extension: realized group payoffs)" : ""));
          w.comment("mutation: " + std::string(to_string(cfg.mutation)));
          w.comment("rng: " + std::string(kRngAlgorithm) + " seed=" + std::to_string(cfg.seed));
          w.comment("steps: " + std::to_string(cfg.steps) + " burn_in=" + std::to_string(cfg.burn_in) +
                    " replicates=" + std::to_string(r.replicates));
          w.comment("final_state: " + std::to_string(r.sim.final_state) + " mean_k=" + format_number(r.sim.mean_k));
          for (std::size_t i = 0; i < cfg.thresholds.size(); ++i)
            w.comment("crossings: k=" + std::to_string(cfg.thresholds[i]) + " count=" +
                      std::to_string(r.sim.crossings[i]));
          w.row("k", "occupancy");
          for (std::size_t k = 0; k < r.sim.occupancy.size(); ++k) w.row(static_cast<int>(k), r.sim.occupancy[k]);
        } else if constexpr (std::is_same_v<T, ScanReport>) {
          w.comment("axis: " + std::string(to_string(r.axis)) +
                    (r.expected_direction > 0 ? " expected=increasing" : " expected=decreasing"));
          w.comment("violations: " + std::to_string(r.violations) + " flat_steps=" + std::to_string(r.flat_steps));
          if (r.first_violation)
            w.comment("first_violation: k=" + std::to_string(r.first_violation->k) +
                      " value=" + format_number(r.first_violation->value) +
                      " delta=" + format_number(r.first_violation->delta));
          w.row("value", "k", "T_plus");
          for (std::size_t i = 0; i < r.grid.size(); ++i)
            for (std::size_t k = 0; k < r.t_plus[i].size(); ++k)
              w.row(r.grid[i], static_cast<int>(k), r.t_plus[i][k]);
        }
      },
      result);
  return w.str();
}

// -- svg --------------------------------------------------------------------

namespace {

struct Series {
  std::string label;
  std::string color;
  const std::vector<double>* y;
};

class SvgDoc {
 public:
  SvgDoc(int width, int height) : width_(width), height_(height) {}

  void text(double x, double y, const std::string& s, int size = 12, const char* anchor = "start") {
    body_ << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" font-size=\"" << size
          << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\">" << escape(s) << "</text>\n";
  }

  void rect(double x, double y, double w, double h, const std::string& fill, const char* stroke = "none") {
    body_ << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(w) << "\" height=\"" << fmt(h)
          << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
  }

  void line(double x1, double y1, double x2, double y2, const char* stroke, const char* dash = nullptr) {
    body_ << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2) << "\" y2=\"" << fmt(y2)
          << "\" stroke=\"" << stroke << "\"" << (dash ? std::string(" stroke-dasharray=\"") + dash + "\"" : "")
          << "/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke) {
    body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
      body_ << (i ? " " : "") << fmt(pts[i].first) << ',' << fmt(pts[i].second);
    body_ << "\"/>\n";
  }

  // Line chart of several series over k = 0..n-1 inside the given box.
  void line_panel(double x0, double y0, double w, double h, const std::string& title, const std::vector<Series>& s) {
    double lo = 0.0, hi = 0.0;
    std::size_t n = 0;
    for (const auto& ser : s) {
      for (double v : *ser.y) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      n = std::max(n, ser.y->size());
    }
    if (hi == lo) hi = lo + 1.0;
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
    const auto px = [&](double k) { return x0 + w * (n > 1 ? k / (n - 1) : 0.0); };
    const auto py = [&](double v) { return y0 + h - h * (v - lo) / (hi - lo); };
    rect(x0, y0, w, h, "white", "#888");
    text(x0, y0 - 6, title, 13);
    if (lo < 0.0 && hi > 0.0) line(x0, py(0.0), x0 + w, py(0.0), "#aaa", "4,3");
    text(x0 - 4, py(hi - pad) + 4, format_number(round4(hi - pad)), 10, "end");
    text(x0 - 4, py(lo + pad) + 4, format_number(round4(lo + pad)), 10, "end");
    text(x0, y0 + h + 14, "0", 10, "middle");
    text(x0 + w, y0 + h + 14, std::to_string(n ? n - 1 : 0), 10, "middle");
    double legend_y = y0 + 14;
    for (const auto& ser : s) {
      std::vector<std::pair<double, double>> pts;
      for (std::size_t k = 0; k < ser.y->size(); ++k) pts.emplace_back(px(k), py((*ser.y)[k]));
      polyline(pts, ser.color);
      text(x0 + w - 6, legend_y, ser.label, 11, "end");
      line(x0 + w - 90, legend_y - 4, x0 + w - 75, legend_y - 4, ser.color.c_str());
      legend_y += 14;
    }
  }

  std::string str() const {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\"" << height_
        << "\" viewBox=\"0 0 " << width_ << ' ' << height_ << "\">\n"
        << body_.str() << "</svg>\n";
    return out.str();
  }

 private:
  static double round4(double v) { return std::round(v * 1e4) / 1e4; }
  static std::string fmt(double v) { return format_number(std::round(v * 100.0) / 100.0); }
  static std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
      if (ch == '<') out += "&lt;";
      else if (ch == '>') out += "&gt;";
      else if (ch == '&') out += "&amp;";
      else out += ch;
    }
    return out;
  }

  int width_, height_;
  std::ostringstream body_;
};

const char* regime_color(Regime r) {
  switch (r) {
    case Regime::all_defect: return "#c0392b";
    case Regime::bistable_defect_dominant: return "#e67e22";
    case Regime::bistable_polymorphic_dominant: return "#3498db";
    case Regime::all_cooperate: return "#27ae60";
  }
  return "#000";
}

}  // namespace

std::string to_svg(const RunSpec& spec, const RunResult& result) {
  return std::visit(
      [&](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, GradientResult>) {
          SvgDoc doc(720, 520);
          doc.line_panel(70, 30, 620, 200, "gradient of selection G(k)", {{"G", "#2c3e50", &r.gradient.g}});
          doc.line_panel(70, 290, 620, 200, "mean payoffs",
                         {{"Pi_C", "#27ae60", &r.transitions.payoffs.pi_c},
                          {"Pi_D", "#c0392b", &r.transitions.payoffs.pi_d}});
          return doc.str();
        } else if constexpr (std::is_same_v<T, StationaryResult>) {
          SvgDoc doc(720, 280);
          doc.line_panel(70, 30, 620, 200, "stationary distribution", {{"sigma", "#8e44ad", &r.sigma.sigma}});
          return doc.str();
        } else if constexpr (std::is_same_v<T, AnalyzeResult>) {
          SvgDoc doc(720, 540);
          doc.line_panel(70, 30, 620, 200, "gradient of selection G(k)", {{"G", "#2c3e50", &r.gradient.g}});
          doc.line_panel(70, 290, 620, 200, "stationary distribution", {{"sigma", "#8e44ad", &r.sigma.sigma}});
          doc.text(70, 525, "regime: " + std::string(to_string(r.report.regime)), 13);
          return doc.str();
        } else if constexpr (std::is_same_v<T, SweepGrid>) {
          const double cell = 24.0, x0 = 80, y0 = 30;
          const std::size_t nx = r.x_values.size(), ny = r.y_values.size();
          SvgDoc doc(static_cast<int>(x0 + nx * cell + 300), static_cast<int>(y0 + ny * cell + 60));
          for (std::size_t iy = 0; iy < ny; ++iy)
            for (std::size_t ix = 0; ix < nx; ++ix)
              doc.rect(x0 + ix * cell, y0 + (ny - 1 - iy) * cell, cell, cell, regime_color(r.cells[iy][ix]));
          doc.text(x0 + nx * cell / 2, y0 + ny * cell + 30, std::string(to_string(r.x_axis.axis)), 13, "middle");
          doc.text(x0 - 30, y0 + ny * cell / 2, std::string(to_string(r.y_axis.axis)), 13, "middle");
          doc.text(x0, y0 + ny * cell + 14, format_number(r.x_axis.lo), 10, "middle");
          doc.text(x0 + nx * cell, y0 + ny * cell + 14, format_number(r.x_axis.hi), 10, "middle");
          doc.text(x0 - 6, y0 + ny * cell, format_number(r.y_axis.lo), 10, "end");
          doc.text(x0 - 6, y0 + 10, format_number(r.y_axis.hi), 10, "end");
          double ly = y0 + 10;
          for (Regime reg : kRegimes) {
            doc.rect(x0 + nx * cell + 20, ly - 10, 12, 12, regime_color(reg));
            doc.text(x0 + nx * cell + 38, ly, std::string(to_string(reg)), 11);
            ly += 18;
          }
          return doc.str();
        } else if constexpr (std::is_same_v<T, SimulateResult>) {
          SvgDoc doc(720, 280);
          doc.line_panel(70, 30, 620, 200,
                         "occupancy (" + std::string(to_string(spec.sim.mode)) + ", seed " +
                             std::to_string(spec.sim.seed) + ")",
                         {{"occupancy", "#16a085", &r.sim.occupancy}});
          return doc.str();
        } else {
          SvgDoc doc(720, 280);
          static const std::array<const char*, 6> palette = {"#1f77b4", "#ff7f0e", "#2ca02c",
                                                             "#d62728", "#9467bd", "#8c564b"};
          std::vector<Series> series;
          for (std::size_t i = 0; i < r.grid.size(); ++i)
            series.push_back({std::string(to_string(r.axis)) + "=" + format_number(r.grid[i]),
                              palette[i % palette.size()], &r.t_plus[i]});
          doc.line_panel(70, 30, 620, 200, "T+(k) across " + std::string(to_string(r.axis)), series);
          return doc.str();
        }
      },
      result);
}

std::string render(const RunSpec& spec, const RunResult& result, OutputFormat format) {
  switch (format) {
    case OutputFormat::csv: return to_csv(spec, result);
    case OutputFormat::json: return to_json(spec, result).dump(2) + "\n";
    case OutputFormat::svg: return to_svg(spec, result);
  }
  return to_csv(spec, result);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace normdyn
