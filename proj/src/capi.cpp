// SPDX-License-Identifier: Apache-2.0
#include "convgeo.h"

#include <cstring>
#include <string>

#include "convgeo/json_io.hpp"
#include "convgeo/svg.hpp"

using namespace convgeo;

struct cg_geometry {
  ConvexGeometry value;
};
struct cg_orderings {
  OrderingFamily value;
};
struct cg_bodies {
  BodyFamily value;
};
struct cg_planar_rep {
  PlanarRepresentation value;
};
struct cg_ellipsoid_rep {
  EllipsoidRepresentation value;
};

namespace {

thread_local std::string g_last_error;

cg_status map_code(Errc code) {
  switch (code) {
    case Errc::invalid_argument:
    case Errc::empty_subset:
    case Errc::invalid_scale:
      return CG_ERROR_INVALID_ARGUMENT;
    case Errc::parse:
      return CG_ERROR_PARSE;
    case Errc::ground_too_large:
    case Errc::search_cap:
    case Errc::dimension_cap:
      return CG_ERROR_CAP_EXCEEDED;
    case Errc::tolerance_inconclusive:
      return CG_ERROR_TOLERANCE_INCONCLUSIVE;
    case Errc::degenerate_identical:
    case Errc::infinite_contact:
      return CG_ERROR_DEGENERATE_INPUT;
    case Errc::no_regular_direction:
    case Errc::line_property_violated:
    case Errc::alpha_too_large:
    case Errc::non_convex_trace:
    case Errc::shape_containment_failed:
      return CG_ERROR_CONSTRUCTION_FAILED;
    case Errc::oracle_violation:
      return CG_ERROR_ORACLE_VIOLATION;
    case Errc::internal:
      return CG_ERROR_INTERNAL;
  }
  return CG_ERROR_INTERNAL;
}

template <typename Fn>
cg_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return CG_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CG_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return CG_ERROR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) fail(Errc::invalid_argument, what);
}

NumericOptions options_with_tolerance(double tolerance) {
  NumericOptions opts;
  if (tolerance > 0) opts.tolerance = tolerance;
  return opts;
}

}  // namespace

extern "C" {

const char* cg_version(void) { return "1.0.0"; }

const char* cg_last_error(void) { return g_last_error.c_str(); }

void cg_string_free(char* text) { delete[] text; }

void cg_geometry_free(cg_geometry* g) { delete g; }
void cg_orderings_free(cg_orderings* o) { delete o; }
void cg_bodies_free(cg_bodies* b) { delete b; }
void cg_planar_rep_free(cg_planar_rep* r) { delete r; }
void cg_ellipsoid_rep_free(cg_ellipsoid_rep* r) { delete r; }

cg_status cg_orderings_from_json(const char* text, cg_orderings** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new cg_orderings{orderings_from_json(parse_json_text(text))};
  });
}

cg_status cg_orderings_to_json(const cg_orderings* o, char** out) {
  return guarded([&] {
    require(o && out, "null argument");
    *out = dup_string(orderings_to_json(o->value).dump(2));
  });
}

cg_status cg_geometry_from_json(const char* text, cg_geometry** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new cg_geometry{geometry_from_json(parse_json_text(text))};
  });
}

cg_status cg_geometry_to_json(const cg_geometry* g, char** out) {
  return guarded([&] {
    require(g && out, "null argument");
    *out = dup_string(geometry_to_json(g->value).dump(2));
  });
}

cg_status cg_bodies_from_json(const char* text, cg_bodies** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new cg_bodies{bodies_from_json(parse_json_text(text))};
  });
}

cg_status cg_bodies_to_json(const cg_bodies* b, char** out) {
  return guarded([&] {
    require(b && out, "null argument");
    *out = dup_string(bodies_to_json(b->value).dump(2));
  });
}

cg_status cg_planar_rep_from_json(const char* text, cg_planar_rep** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new cg_planar_rep{planar_rep_from_json(parse_json_text(text))};
  });
}

cg_status cg_planar_rep_to_json(const cg_planar_rep* r, char** out) {
  return guarded([&] {
    require(r && out, "null argument");
    *out = dup_string(planar_rep_to_json(r->value).dump(2));
  });
}

cg_status cg_ellipsoid_rep_from_json(const char* text, cg_ellipsoid_rep** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new cg_ellipsoid_rep{ellipsoid_rep_from_json(parse_json_text(text))};
  });
}

cg_status cg_ellipsoid_rep_to_json(const cg_ellipsoid_rep* r, char** out) {
  return guarded([&] {
    require(r && out, "null argument");
    *out = dup_string(ellipsoid_rep_to_json(r->value).dump(2));
  });
}

cg_status cg_geometry_from_orderings(const cg_orderings* o, cg_geometry** out) {
  return guarded([&] {
    require(o && out, "null argument");
    *out = new cg_geometry{geometry_from_orderings(o->value)};
  });
}

cg_status cg_family_check_json(const char* family_text, char** report_json,
                               int* valid) {
  return guarded([&] {
    require(family_text && report_json && valid, "null argument");
    SetFamily family = family_from_json(parse_json_text(family_text));
    AxiomReport axioms = check_axioms(family);
    json report{{"axioms", axiom_report_to_json(axioms, family.ground())}};
    bool ok = axioms.valid;
    if (axioms.valid) {
      auto geometry = ConvexGeometry::from_family_unchecked(family);
      auto anti = check_anti_exchange(closure_operator_of(geometry));
      report["anti_exchange"] = anti_exchange_report_to_json(anti, family.ground());
      ok = ok && anti.valid;
    }
    report["valid"] = ok;
    *valid = ok ? 1 : 0;
    *report_json = dup_string(report.dump(2));
  });
}

cg_status cg_geometry_cdim(const cg_geometry* g, int* value, char** report_json) {
  return guarded([&] {
    require(g && value, "null argument");
    auto poset = copoints(g->value);
    auto width = poset_width(poset.sets());
    *value = width.width;
    if (report_json) {
      json cps = json::array();
      for (const auto& c : poset.copoints)
        cps.push_back(json{{"set", mask_to_indices(c.set)}, {"attached", c.attached}});
      json antichain = json::array();
      for (Mask m : width.antichain) antichain.push_back(mask_to_indices(m));
      *report_json = dup_string(json{{"cdim", width.width},
                                     {"copoints", cps},
                                     {"antichain", antichain}}
                                    .dump(2));
    }
  });
}

cg_status cg_crosspolytope(int n, cg_geometry** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new cg_geometry{crosspolytope_geometry(n)};
  });
}

cg_status cg_crosspolytope_copoints_ok(int n, int* ok) {
  return guarded([&] {
    require(ok != nullptr, "null argument");
    *ok = verify_crosspolytope_copoints(n) ? 1 : 0;
  });
}

cg_status cg_geometry_from_points_json(const char* text, cg_geometry** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new cg_geometry{
        geometry_from_points(point_config_from_json(parse_json_text(text)))};
  });
}

cg_status cg_bodies_derive(const cg_bodies* b, double tolerance,
                           cg_geometry** out_geometry, char** stats_json) {
  return guarded([&] {
    require(b && out_geometry, "null argument");
    NumericOptions opts = options_with_tolerance(tolerance);
    auto geometry = geometry_from_bodies(b->value, HullMode::automatic, opts);
    auto sweep = sweep_orderings(b->value, opts);
    int dim = cdim(geometry);
    const int n = b->value.size();
    int k = sweep.max_pair_count;
    int bound = k * n * (n - 1) / 2;
    bool skipped = n < 2;
    json pairs = json::array();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        pairs.push_back(json{{"i", i}, {"j", j}, {"count", sweep.pair_counts[i][j]}});
    // definition round-trip: the sweep orderings regenerate the geometry
    bool regenerated = geometry_from_orderings(sweep.orderings) == geometry;
    if (stats_json)
      *stats_json = dup_string(json{{"n", n},
                                    {"k", k},
                                    {"bound", bound},
                                    {"cdim", dim},
                                    {"bound_ok", skipped || dim <= bound},
                                    {"bound_skipped", skipped},
                                    {"total_crossings", sweep.total_crossings},
                                    {"distinct_orderings", sweep.orderings.count()},
                                    {"orderings_regenerate", regenerated},
                                    {"pair_counts", pairs},
                                    {"orders", sweep.orderings.orders()}}
                                   .dump(2));
    *out_geometry = new cg_geometry{std::move(geometry)};
  });
}

cg_status cg_bodies_convex_position(const cg_bodies* b, const int* indices,
                                    int count, double tolerance, int* ok) {
  return guarded([&] {
    require(b && indices && ok, "null argument");
    Mask subset = 0;
    for (int i = 0; i < count; ++i) {
      require(indices[i] >= 0 && indices[i] < b->value.size(),
              "body index out of range");
      subset |= bit(indices[i]);
    }
    *ok = convex_position(b->value, subset, HullMode::automatic,
                          options_with_tolerance(tolerance))
              ? 1
              : 0;
  });
}

cg_status cg_represent_planar(const cg_orderings* o, int m, double epsilon,
                              const char* shape, int exact, cg_planar_rep** out) {
  return guarded([&] {
    require(o && out, "null argument");
    ShapeMode mode = shape && *shape ? shape_from_string(shape)
                                     : ShapeMode::inner_polygon;
    *out = new cg_planar_rep{
        represent_planar(o->value, m, epsilon, mode, exact != 0)};
  });
}

cg_status cg_planar_rep_to_svg(const cg_planar_rep* r, char** out) {
  return guarded([&] {
    require(r && out, "null argument");
    *out = dup_string(render_svg(r->value));
  });
}

cg_status cg_verify_planar(const cg_geometry* g, const cg_planar_rep* r,
                           double tolerance, int* ok, char** report_json) {
  return guarded([&] {
    require(g && r && ok, "null argument");
    auto result = verify_isomorphism_planar(g->value, r->value,
                                            options_with_tolerance(tolerance));
    *ok = result.ok ? 1 : 0;
    if (report_json) {
      json report{{"isomorphic", result.ok}};
      if (!result.note.empty()) report["note"] = result.note;
      if (result.witness) report["witness"] = mask_to_indices(*result.witness);
      *report_json = dup_string(report.dump(2));
    }
  });
}

cg_status cg_represent_ellipsoids(const cg_orderings* o, double s,
                                  cg_ellipsoid_rep** out) {
  return guarded([&] {
    require(o && out, "null argument");
    *out = new cg_ellipsoid_rep{represent_ellipsoids(o->value, s)};
  });
}

cg_status cg_verify_ellipsoid(const cg_geometry* g, const cg_ellipsoid_rep* r,
                              long samples, uint64_t seed, double tau, int* ok,
                              char** report_json) {
  return guarded([&] {
    require(g && r && ok, "null argument");
    auto report = verify_isomorphism_ellipsoid(g->value, r->value,
                                               samples > 0 ? samples : 20000, seed,
                                               tau > 0 ? tau : 1e-9);
    *ok = report.ok ? 1 : 0;
    if (report_json) {
      json j{{"isomorphic", report.ok},
             {"subsets_checked", report.subsets_checked},
             {"separations_checked", report.separations_checked},
             {"containments_checked", report.containments_checked},
             {"worst_oracle_margin", report.worst_oracle_margin}};
      if (!report.ok) {
        j["witness"] = mask_to_indices(report.witness);
        j["note"] = report.note;
      }
      *report_json = dup_string(j.dump(2));
    }
  });
}

}  // extern "C"
