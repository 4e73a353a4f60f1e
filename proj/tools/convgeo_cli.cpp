// SPDX-License-Identifier: Apache-2.0
//
// convgeo: build, analyze and geometrically represent finite convex
// geometries. Talks to libconvgeo exclusively through the C API.
#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "convgeo.h"

namespace {

constexpr int kExitValid = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInconclusive = 3;

struct StatusExit {
  int code;
};

void check(cg_status status) {
  if (status == CG_OK) return;
  std::cerr << "error: " << cg_last_error() << "\n";
  throw StatusExit{status == CG_ERROR_TOLERANCE_INCONCLUSIVE ? kExitInconclusive
                                                             : kExitInputError};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    throw StatusExit{kExitInputError};
  }
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    throw StatusExit{kExitInputError};
  }
  out << content;
}

// owned C string -> std::string
std::string take(char* text) {
  std::string out = text ? text : "";
  cg_string_free(text);
  return out;
}

void emit(const std::string& content, const std::string& output_path) {
  if (output_path.empty())
    std::cout << content << "\n";
  else
    write_file(output_path, content + "\n");
}

struct Options {
  std::string input, output, rep_path, svg_out, shape = "inner-polygon";
  std::string subset;
  int m = 0;
  int n = 2;
  double epsilon = 0;
  double s = 1.5;
  long samples = 20000;
  std::uint64_t seed = 42;
  double tolerance = 0;
  bool exact = false;
};

template <typename T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, decltype([](T* p) { Free(p); })>;

using GeometryHandle = Handle<cg_geometry, cg_geometry_free>;
using OrderingsHandle = Handle<cg_orderings, cg_orderings_free>;
using BodiesHandle = Handle<cg_bodies, cg_bodies_free>;
using PlanarHandle = Handle<cg_planar_rep, cg_planar_rep_free>;
using EllipsoidHandle = Handle<cg_ellipsoid_rep, cg_ellipsoid_rep_free>;

OrderingsHandle load_orderings(const std::string& path) {
  cg_orderings* raw = nullptr;
  check(cg_orderings_from_json(read_file(path).c_str(), &raw));
  return OrderingsHandle(raw);
}

GeometryHandle load_geometry(const std::string& path) {
  cg_geometry* raw = nullptr;
  check(cg_geometry_from_json(read_file(path).c_str(), &raw));
  return GeometryHandle(raw);
}

BodiesHandle load_bodies(const std::string& path) {
  cg_bodies* raw = nullptr;
  check(cg_bodies_from_json(read_file(path).c_str(), &raw));
  return BodiesHandle(raw);
}

int run_gen(const Options& opt) {
  auto orderings = load_orderings(opt.input);
  cg_geometry* geometry = nullptr;
  check(cg_geometry_from_orderings(orderings.get(), &geometry));
  GeometryHandle owned(geometry);
  char* text = nullptr;
  check(cg_geometry_to_json(owned.get(), &text));
  emit(take(text), opt.output);
  return kExitValid;
}

int run_check(const Options& opt) {
  char* report = nullptr;
  int valid = 0;
  check(cg_family_check_json(read_file(opt.input).c_str(), &report, &valid));
  emit(take(report), opt.output);
  return valid ? kExitValid : kExitInvalid;
}

int run_cdim(const Options& opt) {
  auto geometry = load_geometry(opt.input);
  int value = 0;
  char* report = nullptr;
  check(cg_geometry_cdim(geometry.get(), &value, &report));
  std::cout << value << "\n";
  if (!opt.output.empty()) write_file(opt.output, take(report) + "\n");
  else cg_string_free(report);
  return kExitValid;
}

int run_crosspolytope(const Options& opt) {
  cg_geometry* geometry = nullptr;
  check(cg_crosspolytope(opt.n, &geometry));
  GeometryHandle owned(geometry);
  char* text = nullptr;
  check(cg_geometry_to_json(owned.get(), &text));
  emit(take(text), opt.output);
  return kExitValid;
}

int run_points(const Options& opt) {
  cg_geometry* geometry = nullptr;
  check(cg_geometry_from_points_json(read_file(opt.input).c_str(), &geometry));
  GeometryHandle owned(geometry);
  char* text = nullptr;
  check(cg_geometry_to_json(owned.get(), &text));
  emit(take(text), opt.output);
  return kExitValid;
}

int run_represent_planar(const Options& opt) {
  auto orderings = load_orderings(opt.input);
  cg_planar_rep* rep = nullptr;
  check(cg_represent_planar(orderings.get(), opt.m, opt.epsilon,
                            opt.shape.c_str(), opt.exact ? 1 : 0, &rep));
  PlanarHandle owned(rep);
  char* text = nullptr;
  check(cg_planar_rep_to_json(owned.get(), &text));
  emit(take(text), opt.output);
  if (!opt.svg_out.empty()) {
    char* svg = nullptr;
    check(cg_planar_rep_to_svg(owned.get(), &svg));
    write_file(opt.svg_out, take(svg));
  }
  return kExitValid;
}

int run_represent_ellipsoid(const Options& opt) {
  auto orderings = load_orderings(opt.input);
  cg_ellipsoid_rep* rep = nullptr;
  check(cg_represent_ellipsoids(orderings.get(), opt.s, &rep));
  EllipsoidHandle owned(rep);
  char* text = nullptr;
  check(cg_ellipsoid_rep_to_json(owned.get(), &text));
  emit(take(text), opt.output);
  return kExitValid;
}

int run_derive(const Options& opt) {
  auto bodies = load_bodies(opt.input);
  cg_geometry* geometry = nullptr;
  char* stats_raw = nullptr;
  check(cg_bodies_derive(bodies.get(), opt.tolerance, &geometry, &stats_raw));
  GeometryHandle owned(geometry);
  std::string stats = take(stats_raw);

  char* text = nullptr;
  check(cg_geometry_to_json(owned.get(), &text));
  std::string geometry_json = take(text);

  // human verdict line, pulled from the stats JSON
  auto field = [&](const std::string& key) {
    auto pos = stats.find("\"" + key + "\"");
    pos = stats.find(':', pos);
    auto end = stats.find_first_of(",\n}", pos);
    std::string v = stats.substr(pos + 1, end - pos - 1);
    v.erase(0, v.find_first_not_of(" \t"));
    v.erase(v.find_last_not_of(" \t") + 1);
    return v;
  };
  bool bound_ok = field("bound_ok") == "true";
  bool regenerated = field("orderings_regenerate") == "true";

  if (opt.output.empty()) {
    std::cout << "{\n\"geometry\": " << geometry_json << ",\n\"stats\": " << stats
              << "\n}\n";
  } else {
    write_file(opt.output, geometry_json + "\n");
    std::cout << stats << "\n";
  }
  std::cout << "k=" << field("k") << ", bound " << field("bound") << ", cdim "
            << field("cdim") << " <= " << field("bound") << ": "
            << (bound_ok ? "OK" : "VIOLATED") << "\n";
  return bound_ok && regenerated ? kExitValid : kExitInvalid;
}

int run_verify_iso(const Options& opt) {
  auto geometry = load_geometry(opt.input);
  std::string rep_text = read_file(opt.rep_path);

  cg_planar_rep* planar = nullptr;
  if (cg_planar_rep_from_json(rep_text.c_str(), &planar) == CG_OK) {
    PlanarHandle owned(planar);
    int ok = 0;
    char* report = nullptr;
    check(cg_verify_planar(geometry.get(), owned.get(), opt.tolerance, &ok, &report));
    emit(take(report), opt.output);
    return ok ? kExitValid : kExitInvalid;
  }

  cg_ellipsoid_rep* ellipsoid = nullptr;
  check(cg_ellipsoid_rep_from_json(rep_text.c_str(), &ellipsoid));
  EllipsoidHandle owned(ellipsoid);
  int ok = 0;
  char* report = nullptr;
  check(cg_verify_ellipsoid(geometry.get(), owned.get(), opt.samples, opt.seed,
                            opt.tolerance, &ok, &report));
  emit(take(report), opt.output);
  return ok ? kExitValid : kExitInvalid;
}

int run_convex_position(const Options& opt) {
  auto bodies = load_bodies(opt.input);
  std::vector<int> indices;
  std::stringstream ss(opt.subset);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) indices.push_back(std::stoi(item));
  int ok = 0;
  check(cg_bodies_convex_position(bodies.get(), indices.data(),
                                  static_cast<int>(indices.size()), opt.tolerance,
                                  &ok));
  emit(std::string("{\"convex_position\": ") + (ok ? "true" : "false") + "}",
       opt.output);
  return ok ? kExitValid : kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "convgeo: finite convex geometries, convex dimension, and geometric\n"
      "representations by planar bodies and by axis-aligned ellipsoids.\n\n"
      "JSON schemas:\n"
      "  orderings  {\"elements\": [\"a\",...], \"orders\": [[0,1,2],...]}\n"
      "             each order lists element indices first place to last\n"
      "  geometry   {\"elements\": [...], \"convex_sets\": [[0],[0,1],...]}\n"
      "  points     {\"dim\": 2, \"points\": [{\"label\": \"p\", \"coords\": [\"1/2\",\"0\"]}]}\n"
      "  bodies     {\"bodies\": [{\"label\": \"K\", \"kind\": \"circle\","
      " \"center\": [0,0], \"r\": 1}, ...]}\n"
      "             kinds: circle {center,r} | ellipse {center,a,b,theta} |\n"
      "             polygon {vertices, numbers or \"p/q\" strings} | sampled {points}\n"
      "Exit codes: 0 success/valid, 1 verified invalid, 2 input error,\n"
      "3 tolerance inconclusive."};
  app.require_subcommand(1);

  Options opt;
  int exit_code = kExitValid;
  auto wire = [&](CLI::App* sub, int (*fn)(const Options&)) {
    sub->callback([&, fn] { exit_code = fn(opt); });
  };

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input", opt.input, "input JSON file");
    if (needs_input) in->required();
    sub->add_option("--output", opt.output, "output file (default stdout)");
  };

  auto* gen = app.add_subcommand("gen", "orderings JSON -> geometry JSON");
  add_common(gen, true);
  wire(gen, run_gen);

  auto* chk = app.add_subcommand("check",
                                 "axioms + anti-exchange report for a family");
  add_common(chk, true);
  wire(chk, run_check);

  auto* cd = app.add_subcommand("cdim",
                                "copoints, witness antichain and convex dimension");
  add_common(cd, true);
  wire(cd, run_cdim);

  auto* cross = app.add_subcommand("crosspolytope",
                                   "geometry of {0, +-e_i} in Q^n (1 <= n <= 4)");
  cross->add_option("-n", opt.n, "dimension")->required();
  add_common(cross, false);
  wire(cross, run_crosspolytope);

  auto* pts = app.add_subcommand("points", "point-config JSON -> geometry JSON");
  add_common(pts, true);
  wire(pts, run_points);

  auto* rp = app.add_subcommand("represent-planar",
                                "pinched planar bodies for an ordering family");
  add_common(rp, true);
  rp->add_option("--m", opt.m, "ray count (0: max(#orders, 3))");
  rp->add_option("--epsilon", opt.epsilon, "pinch width (0: validated default)");
  rp->add_option("--shape", opt.shape,
                 "inner-polygon | outer-polygon | midpoint-polygon | semialgebraic");
  rp->add_flag("--exact", opt.exact, "rational ray directions");
  rp->add_option("--svg-out", opt.svg_out, "also render an SVG file");
  wire(rp, run_represent_planar);

  auto* re = app.add_subcommand("represent-ellipsoid",
                                "axis-aligned ellipsoids for an ordering family");
  add_common(re, true);
  re->add_option("--s", opt.s, "scale s > 1; semiaxes stay in (1, s]");
  wire(re, run_represent_ellipsoid);

  auto* dv = app.add_subcommand("derive",
                                "bodies JSON -> geometry + crossing stats + "
                                "dimension bound verdict");
  add_common(dv, true);
  dv->add_option("--tolerance", opt.tolerance, "containment margin tolerance");
  wire(dv, run_derive);

  auto* vi = app.add_subcommand("verify-iso",
                                "check a representation against a geometry");
  add_common(vi, true);
  vi->add_option("--rep", opt.rep_path, "representation JSON (planar or ellipsoid)")
      ->required();
  vi->add_option("--samples", opt.samples, "oracle sample count");
  vi->add_option("--seed", opt.seed, "oracle RNG seed");
  vi->add_option("--tolerance", opt.tolerance, "margin / oracle tolerance");
  wire(vi, run_verify_iso);

  auto* cp = app.add_subcommand("convex-position",
                                "no selected body inside the hull of the others");
  add_common(cp, true);
  cp->add_option("--subset", opt.subset, "comma-separated body indices")->required();
  cp->add_option("--tolerance", opt.tolerance, "containment margin tolerance");
  wire(cp, run_convex_position);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitValid : kExitInputError;
  } catch (const StatusExit& e) {
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return exit_code;
}
