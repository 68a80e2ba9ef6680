#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ostk/atlas.hpp"
#include "ostk/cones.hpp"
#include "ostk/dualize.hpp"
#include "ostk/maps.hpp"
#include "ostk/matricial.hpp"
#include "ostk/quotient.hpp"
#include "ostk/serialize.hpp"
#include "ostk/suites.hpp"
#include "ostk/tensor.hpp"

using namespace ostk;

namespace {

constexpr const char* kToolkitVersion = "0.1.0";

enum ExitCode { kTrue = 0, kFalse = 1, kUndecided = 2, kInputError = 3, kInternal = 4 };

struct Flags {
  double tol = 1e-8;
  int level = 0;
  int hier_level = 2;
  int budget = 8;
  std::uint64_t seed = 1;
  std::string json_out;
};

ConeOptions options(const Flags& f) {
  ConeOptions o;
  o.tol = f.tol;
  o.hier_level = f.hier_level;
  o.budget = f.budget;
  o.seed = f.seed;
  return o;
}

int exit_for(Answer a) {
  switch (a) {
    case Answer::Member: return kTrue;
    case Answer::NotMember: return kFalse;
    case Answer::Undecided: return kUndecided;
  }
  return kInternal;
}

// A path to system JSON, or a canonical name such as "M(3)/J(3)".
SystemPtr load_system(const std::string& arg) {
  if (std::filesystem::exists(arg)) return system_from_json(read_json_file(arg));
  return canonical(arg);
}

SystemPtr system_of(const Json& j, const SystemPtr& given) {
  if (given) return given;
  if (j.contains("system")) {
    const Json& s = j.at("system");
    if (s.is_object()) return system_from_json(s);
    if (s.is_string()) return canonical(s.get<std::string>());
  }
  throw InputError("element has no system; pass --system");
}

void emit(const Flags& f, const Json& j) {
  if (!f.json_out.empty()) write_json_file(f.json_out, j);
}

std::string fmt(cplx z) {
  std::ostringstream os;
  os << std::setprecision(6);
  if (std::abs(z.imag()) < 1e-12)
    os << z.real();
  else
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

void print_matrix(const CMatrix& m) {
  std::size_t w = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) w = std::max(w, fmt(m(i, j)).size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::cout << " ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) std::cout << std::setw(static_cast<int>(w) + 2) << fmt(m(i, j));
    std::cout << "\n";
  }
}

void print_system(const OperatorSystem& s) {
  std::cout << "system " << s.name << " (" << to_string(s.kind) << "), dim " << s.dim;
  if (s.realized()) std::cout << ", realized in M_" << s.ambient_dim;
  std::cout << "\n";
  if (!s.provenance.empty()) std::cout << "provenance: " << s.provenance << "\n";
  for (const auto& w : s.warnings) std::cout << "warning: " << w << "\n";
}

int finish_verdict(const Flags& f, const std::string& command, const ConeVerdict& v, bool verified) {
  std::cout << "answer: " << to_string(v.answer) << "\n";
  std::cout << "route: " << v.route << "\n";
  std::cout << "certificate: " << to_string(v.cert.kind);
  if (v.cert.kind != CertKind::None) std::cout << " value " << v.cert.value;
  std::cout << "\n";
  if (!v.cert.detail.empty()) std::cout << "detail: " << v.cert.detail << "\n";
  for (const auto& m : v.cert.matrices)
    if (m.rows() <= 16) {
      std::cout << "witness:\n";
      print_matrix(m);
    }
  Json j;
  j["command"] = command;
  j["verdict"] = to_json(v);
  j["verified"] = verified;
  emit(f, j);
  if (!verified) {
    std::cerr << "certificate re-verification failed\n";
    return kInternal;
  }
  return exit_for(v.answer);
}

int write_system(const Flags& f, const SystemPtr& s) {
  print_system(*s);
  emit(f, to_json(*s));
  return kTrue;
}

// ---------------------------------------------------------------- commands

int cmd_validate(const Flags& f, const std::string& path, const std::string& system_arg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const Json j = parse_json(text, path);
  std::string kind;
  Json normal;
  if (j.contains("checks") && j.contains("suite")) {
    kind = "suite report";
    normal = j;
  } else if (j.contains("source") && j.contains("target")) {
    kind = "map";
    normal = to_json(map_from_json(j));
  } else if (j.contains("level")) {
    kind = "element";
    const auto s = system_of(j, system_arg.empty() ? nullptr : load_system(system_arg));
    const auto u = element_from_json(j, s);
    check_element(u);
    normal = to_json(u);
  } else if (j.contains("generators") && !j.contains("kind")) {
    kind = "subspace";
    normal = to_json(subspace_from_json(j));
  } else {
    kind = "system";
    const auto s = system_from_json(j);
    print_system(*s);
    normal = to_json(*s);
  }
  const bool identical = dump(normal) == text;
  std::cout << "valid " << kind << "\n";
  std::cout << (identical ? "round trip: bit-identical\n" : "round trip: input differs from the normalized form\n");
  Json out;
  out["command"] = "validate";
  out["valid"] = true;
  out["kind"] = kind;
  out["bit_identical"] = identical;
  emit(f, out);
  return kTrue;
}

int cmd_cone(const Flags& f, const std::string& system_arg, const std::string& element_path) {
  const Json j = read_json_file(element_path);
  const auto s = system_of(j, system_arg.empty() ? nullptr : load_system(system_arg));
  const auto u = element_from_json(j, s);
  const auto v = cone_member(u, options(f));
  return finish_verdict(f, "cone", v, verify_verdict(u, v));
}

int cmd_norm(const Flags& f, const std::string& system_arg, const std::string& element_path) {
  const Json j = read_json_file(element_path);
  const auto s = system_of(j, system_arg.empty() ? nullptr : load_system(system_arg));
  const auto u = element_from_json(j, s);
  const auto r = os_norm(u, options(f));
  std::cout << "norm: " << std::setprecision(12) << r.value << "\n";
  if (!r.exact) std::cout << "bracket: [" << r.lower << ", " << r.upper << "]\n";
  Json out;
  out["command"] = "norm";
  out["value"] = r.value;
  out["lower"] = r.lower;
  out["upper"] = r.upper;
  out["exact"] = r.exact;
  emit(f, out);
  return r.exact ? kTrue : kUndecided;
}

int cmd_cpcheck(const Flags& f, const std::string& map_path) {
  const auto phi = map_from_json(read_json_file(map_path));
  const auto v = cp_check(phi, options(f));
  return finish_verdict(f, "cpcheck", v, verify_cp(phi, v));
}

int cmd_kpos(const Flags& f, const std::string& map_path) {
  if (f.level < 1) throw InputError("kpos needs --level k >= 1");
  const auto phi = map_from_json(read_json_file(map_path));
  const auto v = kpos_refute(phi, static_cast<std::size_t>(f.level), options(f));
  return finish_verdict(f, "kpos", v, verify_kpos(phi, v));
}

int cmd_quotient(const Flags& f, const std::string& subspace_path) {
  const auto sub = subspace_from_json(read_json_file(subspace_path));
  const auto v = is_null_subspace(sub, std::max(1, f.level), options(f));
  if (v.answer != Answer::Member) {
    std::cout << "subspace is not null\n";
    return finish_verdict(f, "quotient", v, true);
  }
  return write_system(f, quotient_system(sub, options(f)));
}

int cmd_with_element(const Flags& f, const std::string& command, const SystemPtr& s,
                     const std::string& element_path) {
  if (element_path.empty()) return write_system(f, s);
  print_system(*s);
  Json j = read_json_file(element_path);
  const auto u = element_from_json(j, s);
  const auto v = cone_member(u, options(f));
  return finish_verdict(f, command, v, verify_verdict(u, v));
}

int cmd_numrange(const Flags& f, const SystemPtr& s, const std::string& element_path, const std::string& matrix_path,
                 int directions, const std::string& csv_path) {
  const Json j = read_json_file(element_path);
  const auto u = element_from_json(j, s);
  if (u.level != 1) throw InputError("numrange takes a level-1 element");
  const CVector& x = u.at(0, 0);
  if (!matrix_path.empty()) {
    const CMatrix a = matrix_from_json(read_json_file(matrix_path));
    const auto v = numerical_range_member(s, x, a, options(f));
    return finish_verdict(f, "numrange", v, true);
  }
  if (directions < 3) throw InputError("--directions must be at least 3");
  std::vector<double> angle(directions), h(directions);
  for (int k = 0; k < directions; ++k) {
    angle[k] = 2.0 * M_PI * k / directions;
    CMatrix d(1, 1);
    d(0, 0) = std::polar(1.0, angle[k]);
    h[k] = numerical_range_support(s, x, d, options(f));
  }
  // vertices of the outer polygon: consecutive support lines x cos t + y sin t = h
  std::ostringstream csv;
  csv << std::setprecision(17) << "angle,support,vertex_re,vertex_im\n";
  Json pts = Json::array();
  for (int k = 0; k < directions; ++k) {
    const int l = (k + 1) % directions;
    const double c1 = std::cos(angle[k]), s1 = std::sin(angle[k]);
    const double c2 = std::cos(angle[l]), s2 = std::sin(angle[l]);
    const double det = c1 * s2 - s1 * c2;
    const double vx = (h[k] * s2 - s1 * h[l]) / det, vy = (c1 * h[l] - h[k] * c2) / det;
    csv << angle[k] << "," << h[k] << "," << vx << "," << vy << "\n";
    pts.push_back({{"angle", angle[k]}, {"support", h[k]}, {"vertex", {vx, vy}}});
    std::cout << std::setprecision(8) << "angle " << angle[k] << "  support " << h[k] << "\n";
  }
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw InputError("cannot write " + csv_path);
    out << csv.str();
  }
  Json out;
  out["command"] = "numrange";
  out["boundary"] = std::move(pts);
  emit(f, out);
  return kTrue;
}

int cmd_suite(const Flags& f, const std::string& name) {
  const auto r = run_suite(name, f.seed, f.budget);
  std::cout << "suite " << r.suite << " seed " << r.seed << " budget " << r.budget << ": " << to_string(r.status)
            << " (" << r.passed << " pass, " << r.failed << " fail, " << r.undecided << " undecided)\n";
  for (const auto& c : r.checks)
    if (c.outcome == Outcome::Fail) std::cout << "  FAIL " << c.id << ": " << c.note << "\n";
  emit(f, to_json(r));
  switch (r.status) {
    case Outcome::Pass: return kTrue;
    case Outcome::Fail: return kFalse;
    case Outcome::Undecided: return kUndecided;
  }
  return kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator system toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("ostk ") + kToolkitVersion + " (format " + kFormatVersion + ")");

  Flags f;
  app.add_option("--tol", f.tol, "numerical tolerance")->check(CLI::PositiveNumber);
  app.add_option("--level", f.level, "matrix level or k")->check(CLI::NonNegativeNumber);
  app.add_option("--hier-level", f.hier_level, "hierarchy level for max cones")->check(CLI::Range(1, 16));
  app.add_option("--budget", f.budget, "search restarts / suite budget")->check(CLI::Range(1, 1000000));
  app.add_option("--seed", f.seed, "random seed");
  app.add_option("--json-out", f.json_out, "write the full JSON result here");

  std::string system_arg, system2_arg, element_path, map_path, file_arg, name_arg, kind_arg = "min", matrix_path,
                                                                                   csv_path;
  int directions = 64;

  auto* validate = app.add_subcommand("validate", "parse and re-serialize a JSON file");
  validate->add_option("file", file_arg)->required();
  validate->add_option("--system", system_arg);
  auto* cone = app.add_subcommand("cone", "cone membership of an element");
  cone->add_option("--system", system_arg);
  cone->add_option("--element", element_path)->required();
  auto* norm = app.add_subcommand("norm", "canonical norm of an element");
  norm->add_option("--system", system_arg);
  norm->add_option("--element", element_path)->required();
  auto* cpcheck = app.add_subcommand("cpcheck", "complete positivity of a map");
  cpcheck->add_option("--map", map_path)->required();
  auto* kpos = app.add_subcommand("kpos", "k-positivity of a map (k = --level)");
  kpos->add_option("--map", map_path)->required();
  auto* dual = app.add_subcommand("dual", "dual system");
  dual->add_option("--system", system_arg)->required();
  auto* quotient = app.add_subcommand("quotient", "quotient by a null subspace");
  quotient->add_option("--subspace", file_arg)->required();
  auto* cop = app.add_subcommand("coproduct", "coproduct of two systems");
  cop->add_option("--system", system_arg)->required();
  cop->add_option("--system2", system2_arg)->required();
  auto* tensor = app.add_subcommand("tensor", "min / max / c tensor product");
  tensor->add_option("--system", system_arg)->required();
  tensor->add_option("--system2", system2_arg)->required();
  tensor->add_option("--kind", kind_arg)->check(CLI::IsMember({"min", "max", "c"}));
  tensor->add_option("--element", element_path);
  auto* omin_cmd = app.add_subcommand("omin", "OMIN_k structure (k = --level)");
  auto* omax_cmd = app.add_subcommand("omax", "OMAX_k structure (k = --level)");
  for (auto* c : {omin_cmd, omax_cmd}) {
    c->add_option("--system", system_arg)->required();
    c->add_option("--element", element_path);
  }
  auto* numrange = app.add_subcommand("numrange", "matricial numerical range");
  numrange->add_option("--system", system_arg)->required();
  numrange->add_option("--element", element_path)->required();
  numrange->add_option("--matrix", matrix_path, "membership of this matrix");
  numrange->add_option("--directions", directions);
  numrange->add_option("--csv", csv_path, "boundary CSV for n = 1");
  auto* suite = app.add_subcommand("suite", "run a verification suite");
  suite->add_option("name", name_arg)->required()->check(CLI::IsMember(suite_names()));
  auto* canon = app.add_subcommand("canonical", "named system");
  canon->add_option("name", name_arg)->required();
  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    const auto k = [&] {
      if (f.level < 1) throw InputError("--level k >= 1 is required");
      return static_cast<std::size_t>(f.level);
    };
    if (*validate) return cmd_validate(f, file_arg, system_arg);
    if (*cone) return cmd_cone(f, system_arg, element_path);
    if (*norm) return cmd_norm(f, system_arg, element_path);
    if (*cpcheck) return cmd_cpcheck(f, map_path);
    if (*kpos) return cmd_kpos(f, map_path);
    if (*dual) return write_system(f, dual_system(load_system(system_arg)));
    if (*quotient) return cmd_quotient(f, file_arg);
    if (*cop) return write_system(f, coproduct(load_system(system_arg), load_system(system2_arg)));
    if (*tensor) {
      const auto s = load_system(system_arg), t = load_system(system2_arg);
      const auto ts = kind_arg == "min" ? tensor_min(s, t) : kind_arg == "max" ? tensor_max(s, t) : tensor_c(s, t);
      return cmd_with_element(f, "tensor", ts, element_path);
    }
    if (*omin_cmd) return cmd_with_element(f, "omin", omin(load_system(system_arg), k()), element_path);
    if (*omax_cmd) return cmd_with_element(f, "omax", omax(load_system(system_arg), k()), element_path);
    if (*numrange) return cmd_numrange(f, load_system(system_arg), element_path, matrix_path, directions, csv_path);
    if (*suite) return cmd_suite(f, name_arg);
    if (*canon) return write_system(f, canonical(name_arg));
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
