#include "dtwist/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace dtwist::cli {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

double grid_sample(double lo, double hi, int i, int n) {
  return lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(n - 1));
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::invalid_argument("cannot open output file '" + path + "'");
  os << content;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

VectorField make_field(const RunConfig& cfg, const TwistedMetric& m) {
  if (cfg.field == "canonical") return canonical_unit_field(m);
  return VectorField::from_expressions(parse_expression(cfg.a_src),
                                       parse_expression(cfg.b_src));
}

json config_json(const RunConfig& cfg, const std::string& command) {
  json j{{"command", command},
         {"f", cfg.f_src},
         {"g", cfg.g_src},
         {"region", {cfg.region.x0, cfg.region.x1, cfg.region.y0, cfg.region.y1}},
         {"grid", cfg.grid},
         {"tol", cfg.tol},
         {"format", cfg.format}};
  if (command == "check" || command == "flow") {
    j["field"] = cfg.field;
    if (cfg.field != "canonical") {
      j["a"] = cfg.a_src;
      j["b"] = cfg.b_src;
    }
  }
  if (command == "flow") {
    j["mode"] = cfg.mode;
    j["start"] = {cfg.start.x, cfg.start.y};
    if (cfg.has_dir) j["dir"] = {cfg.dir.vx, cfg.dir.vy};
    j["step"] = cfg.step;
    j["steps"] = cfg.steps;
    if (!cfg.seeds.empty()) {
      json seeds = json::array();
      for (const Point& s : cfg.seeds) seeds.push_back({s.x, s.y});
      j["seeds"] = seeds;
    }
  }
  return j;
}

}  // namespace

void validate_config(const RunConfig& cfg) {
  if (cfg.region.x0 > cfg.region.x1 || cfg.region.y0 > cfg.region.y1)
    throw std::invalid_argument("region must satisfy x0 <= x1 and y0 <= y1");
  if (cfg.grid < 2) throw std::invalid_argument("grid must be >= 2");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (!(cfg.step > 0.0)) throw std::invalid_argument("step must be > 0");
  if (cfg.steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (cfg.format != "csv" && cfg.format != "json")
    throw std::invalid_argument("format must be csv or json");
  if (cfg.field != "canonical" && cfg.field != "custom")
    throw std::invalid_argument("field must be canonical or custom");
  if (cfg.field == "custom" && (cfg.a_src.empty() || cfg.b_src.empty()))
    throw std::invalid_argument("custom field needs both --a and --b");
  if (cfg.mode != "field" && cfg.mode != "geodesic" && cfg.mode != "leaves")
    throw std::invalid_argument("mode must be field, geodesic or leaves");
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

namespace {

struct ReportRow {
  double x, y, f, g;
  Christoffels ch;
  CurvaturePoint cp;
  double K;
  double t1;
};

constexpr const char* kReportHeader =
    "x,y,f,g,Gxx_x,Gxx_y,Gyy_x,Gyy_y,Gxy_x,Gxy_y,c,d,ip,K,theorem1_residual";

}  // namespace

int cmd_report(const RunConfig& cfg) {
  return guarded([&]() -> int {
    validate_config(cfg);
    const TwistedMetric m(parse_expression(cfg.f_src), parse_expression(cfg.g_src));

    std::vector<ReportRow> rows;
    rows.reserve(static_cast<std::size_t>(cfg.grid) * cfg.grid);
    double max_c = 0.0, max_d = 0.0, max_t1 = 0.0;
    for (int i = 0; i < cfg.grid; ++i) {
      const double x = grid_sample(cfg.region.x0, cfg.region.x1, i, cfg.grid);
      for (int j = 0; j < cfg.grid; ++j) {
        const Point p{x, grid_sample(cfg.region.y0, cfg.region.y1, j, cfg.grid)};
        ReportRow r;
        r.x = p.x;
        r.y = p.y;
        r.f = m.f_value(p);
        r.g = m.g_value(p);
        r.ch = christoffels(m, p);
        r.cp = curvature(m, p);
        r.K = r.cp.ip / (r.f * r.f * r.g * r.g);
        r.t1 = theorem1_residual(m, p);
        max_c = std::max(max_c, std::abs(r.cp.c));
        max_d = std::max(max_d, std::abs(r.cp.d));
        max_t1 = std::max(max_t1, std::abs(r.t1));
        rows.push_back(r);
      }
    }
    const bool flat = max_c <= 1e-12 && max_d <= 1e-12;

    std::string content;
    if (cfg.format == "csv") {
      std::string s = kReportHeader;
      s += '\n';
      for (const ReportRow& r : rows) {
        s += fmt17(r.x) + ',' + fmt17(r.y) + ',' + fmt17(r.f) + ',' + fmt17(r.g) +
             ',' + fmt17(r.ch.Gxx_x) + ',' + fmt17(r.ch.Gxx_y) + ',' +
             fmt17(r.ch.Gyy_x) + ',' + fmt17(r.ch.Gyy_y) + ',' + fmt17(r.ch.Gxy_x) +
             ',' + fmt17(r.ch.Gxy_y) + ',' + fmt17(r.cp.c) + ',' + fmt17(r.cp.d) +
             ',' + fmt17(r.cp.ip) + ',' + fmt17(r.K) + ',' + fmt17(r.t1) + '\n';
      }
      content = std::move(s);
    } else {
      json j;
      j["config"] = config_json(cfg, "report");
      json jrows = json::array();
      for (const ReportRow& r : rows) {
        jrows.push_back({{"x", r.x},
                         {"y", r.y},
                         {"f", r.f},
                         {"g", r.g},
                         {"Gxx_x", r.ch.Gxx_x},
                         {"Gxx_y", r.ch.Gxx_y},
                         {"Gyy_x", r.ch.Gyy_x},
                         {"Gyy_y", r.ch.Gyy_y},
                         {"Gxy_x", r.ch.Gxy_x},
                         {"Gxy_y", r.ch.Gxy_y},
                         {"c", r.cp.c},
                         {"d", r.cp.d},
                         {"ip", r.cp.ip},
                         {"K", r.K},
                         {"theorem1_residual", r.t1}});
      }
      j["rows"] = std::move(jrows);
      j["summary"] = {{"max_abs_c", max_c},
                      {"max_abs_d", max_d},
                      {"max_abs_theorem1_residual", max_t1},
                      {"flat", flat}};
      j["pass"] = true;
      content = j.dump(2) + "\n";
    }
    write_output(cfg.out, content);
    return kOk;
  });
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

int cmd_check(const RunConfig& cfg) {
  return guarded([&]() -> int {
    validate_config(cfg);
    const TwistedMetric m(parse_expression(cfg.f_src), parse_expression(cfg.g_src));
    const VectorField field = make_field(cfg, m);

    const FieldCheckReport rep =
        check_geodesic_field(m, field, cfg.region, cfg.grid, cfg.tol);

    // Theorem-2 criterion sweep (informational; requires a unit field).
    bool criterion_evaluated = false;
    double criterion_sup = 0.0, ric_sup = 0.0;
    if (rep.sup_unit_defect <= 1e-9) {
      criterion_evaluated = true;
      for (int i = 0; i < cfg.grid; ++i) {
        const double x = grid_sample(cfg.region.x0, cfg.region.x1, i, cfg.grid);
        for (int j = 0; j < cfg.grid; ++j) {
          const Point p{x, grid_sample(cfg.region.y0, cfg.region.y1, j, cfg.grid)};
          const TotalGeodesy tg = total_geodesy_criterion(m, p, field);
          criterion_sup = std::max(criterion_sup, std::abs(tg.criterion));
          ric_sup = std::max(ric_sup, std::abs(tg.ric));
        }
      }
    }

    std::string content;
    if (cfg.format == "csv") {
      std::ostringstream s;
      s << "sup_residual = " << fmt17(rep.sup_residual) << "\n"
        << "sup_unit_defect = " << fmt17(rep.sup_unit_defect) << "\n"
        << "worst_point = " << fmt17(rep.worst_point.x) << ","
        << fmt17(rep.worst_point.y) << "\n";
      if (criterion_evaluated)
        s << "criterion_sup = " << fmt17(criterion_sup) << "\n"
          << "ric_sup = " << fmt17(ric_sup) << "\n";
      else
        s << "criterion_sup = skipped (field is not unit on the grid)\n";
      s << "pass = " << (rep.pass ? "true" : "false") << "\n";
      content = s.str();
    } else {
      json j;
      j["config"] = config_json(cfg, "check");
      json summary{{"sup_residual", rep.sup_residual},
                   {"sup_unit_defect", rep.sup_unit_defect},
                   {"worst_point", {rep.worst_point.x, rep.worst_point.y}},
                   {"criterion_evaluated", criterion_evaluated}};
      if (criterion_evaluated) {
        summary["criterion_sup"] = criterion_sup;
        summary["ric_sup"] = ric_sup;
      }
      j["summary"] = std::move(summary);
      j["pass"] = rep.pass;
      content = j.dump(2) + "\n";
    }
    write_output(cfg.out, content);
    return rep.pass ? kOk : kCheckFailed;
  });
}

// ---------------------------------------------------------------------------
// flow
// ---------------------------------------------------------------------------

namespace {

std::string curve_csv(const Curve& c) {
  std::string s;
  for (const CurveSample& smp : c.samples) {
    s += fmt17(smp.t) + ',' + fmt17(smp.x) + ',' + fmt17(smp.y);
    if (c.has_velocity) s += ',' + fmt17(smp.vx) + ',' + fmt17(smp.vy);
    s += '\n';
  }
  return s;
}

json curve_rows_json(const Curve& c, std::optional<int> leaf) {
  json rows = json::array();
  for (const CurveSample& smp : c.samples) {
    json row;
    if (leaf) row["leaf"] = *leaf;
    row["t"] = smp.t;
    row["x"] = smp.x;
    row["y"] = smp.y;
    if (c.has_velocity) {
      row["vx"] = smp.vx;
      row["vy"] = smp.vy;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string leaves_svg(const std::vector<LeafTrace>& leaves, const Rect& region) {
  const double w = 800.0, hgt = 800.0;
  const double dx = region.x1 - region.x0;
  const double dy = region.y1 - region.y0;
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
       "viewBox=\"0 0 800 800\">\n";
  int idx = 0;
  for (const LeafTrace& leaf : leaves) {
    s += "<!-- leaf " + std::to_string(idx) + ": seed (" + fmt_short(leaf.seed.x) +
         ", " + fmt_short(leaf.seed.y) + ") -->\n";
    s += "<path d=\"";
    bool first = true;
    for (const CurveSample& smp : leaf.curve.samples) {
      const double sx = dx == 0.0 ? w / 2.0 : (smp.x - region.x0) / dx * w;
      const double sy = dy == 0.0 ? hgt / 2.0 : (region.y1 - smp.y) / dy * hgt;
      s += first ? "M " : "L ";
      s += fmt_short(sx) + ' ' + fmt_short(sy) + ' ';
      first = false;
    }
    if (!s.empty() && s.back() == ' ') s.pop_back();
    s += "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    ++idx;
  }
  s += "</svg>\n";
  return s;
}

}  // namespace

int cmd_flow(const RunConfig& cfg) {
  return guarded([&]() -> int {
    validate_config(cfg);
    if (cfg.mode == "geodesic" && !cfg.has_dir)
      throw std::invalid_argument("geodesic mode requires --dir vx,vy");
    if (cfg.mode == "leaves" && cfg.seeds.empty())
      throw std::invalid_argument("leaves mode requires --seeds");

    const TwistedMetric m(parse_expression(cfg.f_src), parse_expression(cfg.g_src));

    std::string content;
    std::string summary_text;
    json j;
    int exit_code = kOk;

    if (cfg.mode == "field" || cfg.mode == "geodesic") {
      Curve c;
      if (cfg.mode == "field") {
        const VectorField field = make_field(cfg, m);
        c = flow_integral_curve(m, field, cfg.start, cfg.step, cfg.steps);
      } else {
        c = integrate_geodesic(m, cfg.start, cfg.dir, cfg.step, cfg.steps);
      }

      json summary{{"samples", c.samples.size()},
                   {"endpoint", {c.samples.back().x, c.samples.back().y}}};
      if (cfg.mode == "geodesic") {
        const CurveSample& s0 = c.samples.front();
        const CurveSample& s1 = c.samples.back();
        const double sq0 =
            metric_inner(m, {s0.x, s0.y}, {s0.vx, s0.vy}, {s0.vx, s0.vy});
        const double sq1 =
            metric_inner(m, {s1.x, s1.y}, {s1.vx, s1.vy}, {s1.vx, s1.vy});
        summary["speed_sq_initial"] = sq0;
        summary["speed_sq_final"] = sq1;
        summary_text = "speed_sq_initial = " + fmt17(sq0) +
                       "\nspeed_sq_final = " + fmt17(sq1) + "\n";
      }

      if (cfg.format == "csv") {
        content = c.has_velocity ? "t,x,y,vx,vy\n" : "t,x,y\n";
        content += curve_csv(c);
      } else {
        j["config"] = config_json(cfg, "flow");
        j["rows"] = curve_rows_json(c, std::nullopt);
        j["summary"] = std::move(summary);
        j["pass"] = true;
        content = j.dump(2) + "\n";
      }
    } else {  // leaves
      const VectorField field = make_field(cfg, m);
      const std::vector<LeafTrace> leaves =
          trace_leaves(m, field, cfg.seeds, cfg.step, cfg.steps);
      const bool all_ok =
          std::all_of(leaves.begin(), leaves.end(), [](const LeafTrace& l) { return l.ok; });
      if (!all_ok) exit_code = kDomainError;

      if (cfg.format == "csv") {
        content = "t,x,y\n";
        int idx = 0;
        for (const LeafTrace& leaf : leaves) {
          content += "# leaf " + std::to_string(idx) + ": seed " +
                     fmt17(leaf.seed.x) + "," + fmt17(leaf.seed.y) + "\n";
          if (!leaf.ok) content += "# error: " + leaf.error + "\n";
          content += curve_csv(leaf.curve);
          ++idx;
        }
      } else {
        j["config"] = config_json(cfg, "flow");
        json rows = json::array();
        json leaf_summaries = json::array();
        int idx = 0;
        for (const LeafTrace& leaf : leaves) {
          for (auto& row : curve_rows_json(leaf.curve, idx)) rows.push_back(row);
          json ls{{"leaf", idx}, {"seed", {leaf.seed.x, leaf.seed.y}}, {"ok", leaf.ok}};
          if (!leaf.ok) ls["error"] = leaf.error;
          leaf_summaries.push_back(std::move(ls));
          ++idx;
        }
        j["rows"] = std::move(rows);
        j["summary"] = {{"leaves", std::move(leaf_summaries)}};
        j["pass"] = all_ok;
        content = j.dump(2) + "\n";
      }

      for (const LeafTrace& leaf : leaves)
        if (!leaf.ok)
          std::cerr << "leaf at (" << fmt_short(leaf.seed.x) << ", "
                    << fmt_short(leaf.seed.y) << "): " << leaf.error << "\n";

      if (!cfg.svg.empty()) {
        std::ofstream os(cfg.svg, std::ios::binary);
        if (!os) throw std::invalid_argument("cannot open SVG file '" + cfg.svg + "'");
        os << leaves_svg(leaves, cfg.region);
      }
    }

    write_output(cfg.out, content);
    if (!summary_text.empty()) {
      // Keep stdout parseable when the CSV itself goes there.
      if (cfg.out.empty() && cfg.format == "csv")
        std::cerr << summary_text;
      else if (cfg.format == "csv")
        std::cout << summary_text;
    }
    return exit_code;
  });
}

// ---------------------------------------------------------------------------
// argv front end
// ---------------------------------------------------------------------------

namespace {

double parse_double(const std::string& s, const char* what) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc{} || p != e)
    throw std::invalid_argument(std::string("invalid ") + what + ": '" + s + "'");
  return v;
}

std::vector<double> parse_doubles(const std::string& s, char sep, const char* what) {
  std::vector<double> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(parse_double(item, what));
  return out;
}

Rect parse_region(const std::string& s) {
  const auto v = parse_doubles(s, ',', "region");
  if (v.size() != 4)
    throw std::invalid_argument("region must be x0,x1,y0,y1: '" + s + "'");
  return {v[0], v[1], v[2], v[3]};
}

Point parse_point(const std::string& s, const char* what) {
  const auto v = parse_doubles(s, ',', what);
  if (v.size() != 2)
    throw std::invalid_argument(std::string(what) + " must be x,y: '" + s + "'");
  return {v[0], v[1]};
}

std::vector<Point> parse_seeds(const std::string& s) {
  std::vector<Point> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ';'))
    if (!item.empty()) out.push_back(parse_point(item, "seed"));
  return out;
}

// --config JSON: applied as defaults before flag parsing, so explicit flags
// override it.
void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open config file '" + path + "'");
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("config file '" + path + "': " + e.what());
  }
  if (j.contains("f")) cfg.f_src = j["f"].get<std::string>();
  if (j.contains("g")) cfg.g_src = j["g"].get<std::string>();
  if (j.contains("region")) {
    const auto& r = j["region"];
    if (!r.is_array() || r.size() != 4)
      throw std::invalid_argument("config region must be [x0,x1,y0,y1]");
    cfg.region = {r[0].get<double>(), r[1].get<double>(), r[2].get<double>(),
                  r[3].get<double>()};
  }
  if (j.contains("grid")) cfg.grid = j["grid"].get<int>();
  if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
  if (j.contains("step")) cfg.step = j["step"].get<double>();
  if (j.contains("steps")) cfg.steps = j["steps"].get<int>();
  if (j.contains("format")) cfg.format = j["format"].get<std::string>();
  if (j.contains("out")) cfg.out = j["out"].get<std::string>();
  if (j.contains("svg")) cfg.svg = j["svg"].get<std::string>();
  if (j.contains("field")) cfg.field = j["field"].get<std::string>();
  if (j.contains("a")) cfg.a_src = j["a"].get<std::string>();
  if (j.contains("b")) cfg.b_src = j["b"].get<std::string>();
  if (j.contains("mode")) cfg.mode = j["mode"].get<std::string>();
  if (j.contains("start")) {
    const auto& p = j["start"];
    if (!p.is_array() || p.size() != 2)
      throw std::invalid_argument("config start must be [x,y]");
    cfg.start = {p[0].get<double>(), p[1].get<double>()};
  }
  if (j.contains("dir")) {
    const auto& p = j["dir"];
    if (!p.is_array() || p.size() != 2)
      throw std::invalid_argument("config dir must be [vx,vy]");
    cfg.dir = {p[0].get<double>(), p[1].get<double>()};
    cfg.has_dir = true;
  }
  if (j.contains("seeds")) {
    cfg.seeds.clear();
    for (const auto& s : j["seeds"]) {
      if (!s.is_array() || s.size() != 2)
        throw std::invalid_argument("config seeds must be [[x,y],...]");
      cfg.seeds.push_back({s[0].get<double>(), s[1].get<double>()});
    }
  }
}

}  // namespace

int run_main(int argc, const char* const* argv) {
  RunConfig cfg;

  // Pre-scan for --config so flags parsed below override its values.
  try {
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (arg == "--config" && i + 1 < argc)
        apply_config_file(argv[i + 1], cfg);
      else if (arg.rfind("--config=", 0) == 0)
        apply_config_file(arg.substr(9), cfg);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  const bool f_preset = !cfg.f_src.empty();
  const bool g_preset = !cfg.g_src.empty();

  CLI::App app{"geometry workbench for the double-twisted plane R x_(f,g) R"};
  app.require_subcommand(1);

  std::string region_s, start_s, dir_s, seeds_s, config_s;

  auto add_common = [&](CLI::App* sub, bool need_fg) {
    auto* f_opt = sub->add_option("--f", cfg.f_src, "twisting function f(x,y)");
    auto* g_opt = sub->add_option("--g", cfg.g_src, "twisting function g(x,y)");
    if (need_fg && !f_preset) f_opt->required();
    if (need_fg && !g_preset) g_opt->required();
    sub->add_option("--region", region_s, "region x0,x1,y0,y1 (default -1,1,-1,1)");
    sub->add_option("--grid", cfg.grid, "samples per axis (>= 2)");
    sub->add_option("--tol", cfg.tol, "pass/fail tolerance");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "csv | json");
    sub->add_option("--config", config_s, "JSON config file mirroring the flags");
  };

  CLI::App* report = app.add_subcommand(
      "report", "per-grid-point metric, connection and curvature table");
  add_common(report, true);

  CLI::App* check = app.add_subcommand(
      "check", "geodesic-field check and totally-geodesic criterion over a grid");
  add_common(check, true);
  check->add_option("--field", cfg.field, "canonical | custom");
  check->add_option("--a", cfg.a_src, "x-component expression (custom field)");
  check->add_option("--b", cfg.b_src, "y-component expression (custom field)");

  CLI::App* flow = app.add_subcommand(
      "flow", "integrate integral curves, geodesics or foliation leaves");
  add_common(flow, true);
  flow->add_option("--mode", cfg.mode, "field | geodesic | leaves");
  flow->add_option("--start", start_s, "start point x,y");
  flow->add_option("--dir", dir_s, "initial velocity vx,vy (geodesic mode)");
  flow->add_option("--step", cfg.step, "integration step h");
  flow->add_option("--steps", cfg.steps, "number of steps n");
  flow->add_option("--seeds", seeds_s, "seeds x1,y1;x2,y2;... (leaves mode)");
  flow->add_option("--svg", cfg.svg, "SVG output path (leaves mode)");
  flow->add_option("--field", cfg.field, "canonical | custom");
  flow->add_option("--a", cfg.a_src, "x-component expression (custom field)");
  flow->add_option("--b", cfg.b_src, "y-component expression (custom field)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (!region_s.empty()) cfg.region = parse_region(region_s);
    if (!start_s.empty()) cfg.start = parse_point(start_s, "start");
    if (!dir_s.empty()) {
      const Point d = parse_point(dir_s, "dir");
      cfg.dir = {d.x, d.y};
      cfg.has_dir = true;
    }
    if (!seeds_s.empty()) cfg.seeds = parse_seeds(seeds_s);
    if (!cfg.a_src.empty() || !cfg.b_src.empty()) cfg.field = "custom";
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (report->parsed()) return cmd_report(cfg);
  if (check->parsed()) return cmd_check(cfg);
  return cmd_flow(cfg);
}

}  // namespace dtwist::cli
