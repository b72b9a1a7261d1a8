#include "tilekit/cli.hpp"

#include "tilekit/embedding.hpp"
#include "tilekit/errors.hpp"
#include "tilekit/generators.hpp"
#include "tilekit/net.hpp"
#include "tilekit/report.hpp"
#include "tilekit/server.hpp"
#include "tilekit/service.hpp"
#include "tilekit/spec_format.hpp"

#include <CLI11.hpp>
#include <boost/system/system_error.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace tilekit {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SurfaceInput {
  std::string spec;
  std::string preset;

  void attach(CLI::App* cmd) {
    auto* s = cmd->add_option("--spec", spec, "Surface spec file ('-' for stdin)");
    auto* p = cmd->add_option("--preset", preset, "Generator preset, e.g. torus-9fold, football-7-2, cube");
    s->excludes(p);
  }

  Surface load(std::istream& in) const {
    if (!preset.empty()) return tilekit::preset(preset);
    if (spec.empty()) throw UsageError("one of --spec or --preset is required");
    if (spec == "-") {
      std::stringstream buf;
      buf << in.rdbuf();
      return parse_spec(buf.str());
    }
    std::ifstream file(spec, std::ios::binary);
    if (!file) throw IoError(fmt::format("cannot read {}", spec));
    std::stringstream buf;
    buf << file.rdbuf();
    return parse_spec(buf.str());
  }
};

ReportFormat parse_format(const std::string& name) {
  const auto f = report_format_from_name(name);
  if (!f) throw UsageError(fmt::format("--format must be text or json, not '{}'", name));
  return *f;
}

// "F:x,y"
SurfacePoint parse_point(const std::string& text) {
  SurfacePoint p;
  char colon = 0, comma = 0;
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  std::uint32_t face = 0;
  if (!(in >> face >> colon >> p.position.x >> comma >> p.position.y) || colon != ':' || comma != ',' ||
      !(in >> std::ws).eof()) {
    throw UsageError(fmt::format("expected a point FACE:X,Y, got '{}'", text));
  }
  p.face = FaceId{face};
  return p;
}

Vec2 parse_vector(const std::string& text) {
  Vec2 v;
  char comma = 0;
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  if (!(in >> v.x >> comma >> v.y) || comma != ',' || !(in >> std::ws).eof()) {
    throw UsageError(fmt::format("expected a vector X,Y, got '{}'", text));
  }
  return v;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) throw IoError(fmt::format("cannot write {}", path));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"Regular-polygon surface toolkit", "tilekit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tilekit 0.3.0");

  std::string format = "text";
  std::string output;

  // build
  SurfaceInput build_in;
  bool list_presets = false;
  auto* build = app.add_subcommand("build", "Write the canonical spec of a spec file or preset");
  build_in.attach(build);
  build->add_flag("--list-presets", list_presets, "List preset names and exit");
  build->add_option("-o,--output", output, "Output file (default stdout)");

  // analyze
  SurfaceInput analyze_in;
  auto* analyze = app.add_subcommand("analyze", "Topology, curvature and Descartes report");
  analyze_in.attach(analyze);
  analyze->add_option("--format", format, "text or json")->capture_default_str();

  // trace
  SurfaceInput trace_in;
  std::string trace_from, trace_to, trace_dir;
  double trace_length = 0;
  std::size_t max_faces = GeodesicSearchOptions{}.max_faces;
  auto* trace = app.add_subcommand("trace", "Trace a straight ray, or find the shortest straight geodesic");
  trace_in.attach(trace);
  trace->add_option("--from", trace_from, "Start point FACE:X,Y")->required();
  auto* to_opt = trace->add_option("--to", trace_to, "End point FACE:X,Y");
  auto* dir_opt = trace->add_option("--dir", trace_dir, "Ray direction X,Y");
  auto* len_opt = trace->add_option("--length", trace_length, "Ray length");
  dir_opt->needs(len_opt);
  len_opt->needs(dir_opt);
  to_opt->excludes(dir_opt);
  trace->add_option("--max-faces", max_faces, "Strip length bound for --to")->capture_default_str();
  trace->add_option("--format", format, "text or json")->capture_default_str();

  // triangle
  SurfaceInput tri_in;
  std::string tri_a, tri_b, tri_c;
  auto* triangle = app.add_subcommand("triangle", "Geodesic triangle angle sum against enclosed defect");
  tri_in.attach(triangle);
  triangle->add_option("--a", tri_a, "Corner FACE:X,Y")->required();
  triangle->add_option("--b", tri_b, "Corner FACE:X,Y")->required();
  triangle->add_option("--c", tri_c, "Corner FACE:X,Y")->required();
  triangle->add_option("--max-faces", max_faces, "Strip length bound per side")->capture_default_str();
  triangle->add_option("--format", format, "text or json")->capture_default_str();

  // relax
  SurfaceInput relax_in;
  RelaxOptions relax_opts;
  std::uint64_t seed = 0;
  std::string relax_obj;
  auto* relax_cmd = app.add_subcommand("relax", "Relax a spring embedding in 3D");
  relax_in.attach(relax_cmd);
  relax_cmd->add_option("--iters", relax_opts.max_iters, "Iteration cap")->capture_default_str();
  relax_cmd->add_option("--tol", relax_opts.tol, "Gradient-norm tolerance")->capture_default_str();
  relax_cmd->add_option("--seed", seed, "Jitter seed")->capture_default_str();
  relax_cmd->add_option("--obj", relax_obj, "Also write the relaxed mesh as OBJ");
  relax_cmd->add_option("--format", format, "text or json")->capture_default_str();

  // export
  SurfaceInput export_in;
  std::string export_format;
  std::uint32_t root = 0;
  std::string tree = "bfs";
  std::vector<std::string> path_specs;
  auto* export_cmd = app.add_subcommand("export", "Export a relaxed OBJ mesh, an SVG net or a JSON net");
  export_in.attach(export_cmd);
  export_cmd->add_option("--format", export_format, "obj, svg or net")->required();
  export_cmd->add_option("--iters", relax_opts.max_iters, "obj: relaxation iteration cap")->capture_default_str();
  export_cmd->add_option("--tol", relax_opts.tol, "obj: gradient-norm tolerance")->capture_default_str();
  export_cmd->add_option("--seed", seed, "obj: jitter seed")->capture_default_str();
  export_cmd->add_option("--root", root, "svg/net: root face")->capture_default_str();
  export_cmd->add_option("--tree", tree, "svg/net: bfs or dfs")->capture_default_str();
  export_cmd->add_option("--path", path_specs, "Overlay the shortest geodesic 'FACE:X,Y FACE:X,Y' (repeatable)");
  export_cmd->add_option("-o,--output", output, "Output file (default stdout)");

  // enumerate
  std::string class_arg = "flat";
  int max_sides = 12;
  int max_count = 6;
  bool uniform = false;
  auto* enumerate = app.add_subcommand("enumerate", "Vertex configurations by angle sum");
  enumerate->add_option("--class", class_arg, "convex, flat or hyperbolic")->capture_default_str();
  enumerate->add_option("--max-sides", max_sides, "Largest polygon")->capture_default_str();
  enumerate->add_option("--max-count", max_count, "Most polygons per vertex")->capture_default_str();
  enumerate->add_flag("--uniform", uniform, "Only configurations of a single polygon");
  enumerate->add_option("--format", format, "text or json")->capture_default_str();

  // serve
  std::string host = "127.0.0.1";
  unsigned short port = 8080;
  unsigned threads = 4;
  long ttl = 3600;
  auto* serve = app.add_subcommand("serve", "Run the HTTP/WebSocket session service");
  serve->add_option("--host", host, "Listen address")->capture_default_str();
  serve->add_option("--port", port, "Listen port (0 picks one)")->capture_default_str();
  serve->add_option("--threads", threads, "I/O threads")->capture_default_str();
  serve->add_option("--ttl", ttl, "Idle session lifetime in seconds")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*build) {
      if (list_presets) {
        for (const std::string& name : preset_names()) out << name << "\n";
        return kExitOk;
      }
      emit(write_spec(build_in.load(in)), output, out);
    } else if (*analyze) {
      const ReportFormat f = parse_format(format);
      out << format_topology(analyze_in.load(in), f);
    } else if (*trace) {
      const ReportFormat f = parse_format(format);
      const Surface s = trace_in.load(in);
      const SurfacePoint from = parse_point(trace_from);
      GeodesicPath path;
      if (!trace_to.empty()) {
        GeodesicSearchOptions opts;
        opts.max_faces = max_faces;
        path = shortest_geodesic(s, from, parse_point(trace_to), opts);
      } else if (!trace_dir.empty()) {
        path = trace_ray(s, from, parse_vector(trace_dir), trace_length);
      } else {
        throw UsageError("trace needs --to, or --dir with --length");
      }
      out << format_path(path, f);
    } else if (*triangle) {
      const ReportFormat f = parse_format(format);
      const Surface s = tri_in.load(in);
      GeodesicSearchOptions opts;
      opts.max_faces = max_faces;
      out << format_triangle(geodesic_triangle(s, parse_point(tri_a), parse_point(tri_b), parse_point(tri_c), opts), f);
    } else if (*relax_cmd) {
      const ReportFormat f = parse_format(format);
      const Surface s = relax_in.load(in);
      EmbeddedMesh m = init_embedding(s, seed);
      const RelaxReport r = relax(m, relax_opts);
      if (!relax_obj.empty()) emit(export_obj(m, &s), relax_obj, out);
      out << format_relax(r, f);
    } else if (*export_cmd) {
      const Surface s = export_in.load(in);
      std::vector<GeodesicPath> paths;
      for (const std::string& spec : path_specs) {
        const auto space = spec.find(' ');
        if (space == std::string::npos) throw UsageError(fmt::format("--path needs two points, got '{}'", spec));
        paths.push_back(shortest_geodesic(s, parse_point(spec.substr(0, space)), parse_point(spec.substr(space + 1))));
      }
      if (export_format == "obj") {
        EmbeddedMesh m = init_embedding(s, seed);
        relax(m, relax_opts);
        emit(export_obj(m, &s, paths), output, out);
      } else if (export_format == "svg" || export_format == "net") {
        const auto strategy = tree_strategy_from_name(tree);
        if (!strategy) throw UsageError(fmt::format("--tree must be bfs or dfs, not '{}'", tree));
        const PlanarNet net = unfold_net(s, FaceId{root}, *strategy);
        emit(export_format == "svg" ? export_svg(s, net, paths) : export_net_json(s, net), output, out);
      } else {
        throw UsageError(fmt::format("--format must be obj, svg or net, not '{}'", export_format));
      }
    } else if (*enumerate) {
      const ReportFormat f = parse_format(format);
      const auto cls = class_from_name(class_arg);
      if (!cls) throw UsageError(fmt::format("--class must be convex, flat or hyperbolic, not '{}'", class_arg));
      out << format_configs(enumerate_vertex_configs(*cls, max_sides, max_count, uniform), f);
    } else if (*serve) {
      ServiceOptions opts;
      opts.ttl = std::chrono::seconds(ttl);
      SessionService service(opts);
      Server server(service, host, port, threads);
      server.stop_on_signals();
      server.start();
      out << fmt::format("listening on http://{}:{}\n", host, server.port()) << std::flush;
      server.wait();
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << fmt::format("error: {}: {}\n", e.code_name(), e.what());
    return kExitDomainError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const boost::system::system_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace tilekit
