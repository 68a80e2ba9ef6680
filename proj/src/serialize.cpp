#include "ostk/serialize.hpp"

#include <fstream>
#include <sstream>

#include "ostk/atlas.hpp"
#include "ostk/dualize.hpp"
#include "ostk/matricial.hpp"
#include "ostk/tensor.hpp"

namespace ostk {

namespace {

Json complex_pair(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError("expected a complex number as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw InputError(std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

// Renamed copy keeps round trips exact for derived systems.
SystemPtr with_identity(SystemPtr s, const Json& j) {
  auto m = std::const_pointer_cast<OperatorSystem>(s);
  if (j.contains("name")) m->name = j.at("name").get<std::string>();
  if (j.contains("provenance")) m->provenance = j.at("provenance").get<std::string>();
  return m;
}

}  // namespace

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_pair(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_pair(v(i)));
  return out;
}

Json to_json(const RVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("expected a nonempty matrix");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) throw InputError("matrix rows must be arrays");
  const std::size_t cols = j[0].size();
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw InputError("matrix rows have unequal lengths");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_from(j[r][c]);
  }
  return m;
}

CVector cvector_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected a coefficient array");
  CVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = complex_from(j[i]);
  return v;
}

RVector rvector_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected a real array");
  RVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw InputError("expected a real number");
    v(i) = j[i].get<double>();
  }
  return v;
}

Json to_json(const OperatorSystem& s) {
  Json j;
  j["format"] = kFormatVersion;
  j["kind"] = to_string(s.kind);
  j["name"] = s.name;
  j["provenance"] = s.provenance;
  switch (s.kind) {
    case SystemKind::Concrete: {
      j["ambient_dim"] = s.ambient_dim;
      Json basis = Json::array();
      for (const auto& b : s.basis) basis.push_back(to_json(b));
      j["basis"] = std::move(basis);
      j["faithful_state"] = to_json(s.faithful_state);
      break;
    }
    case SystemKind::Dual:
      j["parent"] = to_json(*s.parents[0]);
      break;
    case SystemKind::Quotient: {
      j["parent"] = to_json(*s.parents[0]);
      Json k = Json::array();
      for (Eigen::Index c = 0; c < s.kernel.cols(); ++c) k.push_back(to_json(RVector(s.kernel.col(c))));
      j["kernel"] = std::move(k);
      break;
    }
    case SystemKind::Coproduct:
      j["factors"] = Json::array({to_json(*s.parents[1]), to_json(*s.parents[2])});
      break;
    case SystemKind::TensorMin:
    case SystemKind::TensorMax: {
      j["factors"] = Json::array({to_json(*s.parents[0]), to_json(*s.parents[1])});
      Json labels = Json::array();
      const std::size_t dt = s.parents[1]->dim;
      for (std::size_t i = 0; i < s.dim; ++i) labels.push_back(Json::array({i / dt, i % dt}));
      j["basis_labels"] = std::move(labels);
      break;
    }
    case SystemKind::OminK:
    case SystemKind::OmaxK:
      j["k"] = s.k;
      j["parent"] = to_json(*s.parents[0]);
      break;
  }
  return j;
}

SystemPtr system_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("system JSON must be an object");
  if (j.contains("canonical")) return canonical(j.at("canonical").get<std::string>());
  const std::string kind = j.value("kind", "concrete");
  if (kind == "concrete") {
    const std::size_t d = size_field(j, "ambient_dim");
    std::vector<CMatrix> basis;
    for (const auto& b : field(j, "basis")) basis.push_back(matrix_from_json(b));
    std::optional<RVector> fs;
    if (j.contains("faithful_state")) fs = rvector_from_json(j.at("faithful_state"));
    auto s = make_concrete(j.value("name", std::string("S")), d, std::move(basis), fs);
    return with_identity(s, j);
  }
  if (kind == "dual") return with_identity(dual_system(system_from_json(field(j, "parent"))), j);
  if (kind == "quotient") {
    const auto parent = system_from_json(field(j, "parent"));
    Subspace sub;
    if (j.contains("kernel")) {
      const Json& k = j.at("kernel");
      sub.parent = parent;
      sub.generators = RMatrix(parent->dim, k.size());
      for (std::size_t c = 0; c < k.size(); ++c) {
        const RVector col = rvector_from_json(k[c]);
        if (static_cast<std::size_t>(col.size()) != parent->dim) throw InputError("kernel vector has wrong length");
        sub.generators.col(c) = col;
      }
    } else {
      std::vector<CVector> gens;
      for (const auto& g : field(j, "generators")) gens.push_back(cvector_from_json(g));
      sub = make_subspace(parent, gens);
    }
    return with_identity(quotient_system(sub), j);
  }
  if (kind == "coproduct" || kind == "tensor_min" || kind == "tensor_max") {
    const Json& f = field(j, "factors");
    if (!f.is_array() || f.size() != 2) throw InputError("expected two factors");
    const auto s = system_from_json(f[0]);
    const auto t = system_from_json(f[1]);
    SystemPtr out = kind == "coproduct" ? coproduct(s, t) : kind == "tensor_min" ? tensor_min(s, t) : tensor_max(s, t);
    return with_identity(out, j);
  }
  if (kind == "omin_k" || kind == "omax_k") {
    const auto parent = system_from_json(field(j, "parent"));
    const std::size_t k = size_field(j, "k");
    return with_identity(kind == "omin_k" ? omin(parent, k) : omax(parent, k), j);
  }
  throw InputError("unknown system kind '" + kind + "'");
}

Json to_json(const LevelElement& u) {
  Json j;
  j["kind"] = to_string(u.system->kind);
  j["system"] = u.system->name;
  j["level"] = u.level;
  Json rows = Json::array();
  for (std::size_t a = 0; a < u.level; ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < u.level; ++b) row.push_back(to_json(u.at(a, b)));
    rows.push_back(std::move(row));
  }
  j["coeffs"] = std::move(rows);
  return j;
}

LevelElement element_from_json(const Json& j, const SystemPtr& s) {
  if (!j.is_object()) throw InputError("element JSON must be an object");
  const std::size_t n = size_field(j, "level");
  if (n == 0) throw InputError("element level must be at least 1");
  if (j.contains("realized") && !s->realized() &&
      (s->kind == SystemKind::Quotient || s->kind == SystemKind::Coproduct) && s->parents[0]->realized()) {
    // a representative in the parent
    const auto up = element_from_json(j, s->parents[0]);
    LevelElement u = zero_element(s, n);
    for (std::size_t k = 0; k < u.coeffs.size(); ++k) u.coeffs[k] = quotient_coords(*s, up.coeffs[k]);
    return u;
  }
  if (j.contains("realized")) {
    if (!s->realized()) throw InputError("realized element given for a system without realization");
    const CMatrix m = matrix_from_json(j.at("realized"));
    if (static_cast<std::size_t>(m.rows()) != n * s->ambient_dim || m.rows() != m.cols())
      throw InputError("realized element has the wrong size");
    const auto c = coordinates(*s, m);
    if (c.residual > 1e-8 * std::max(1.0, m.norm())) throw InputError("realized element lies outside the system");
    return element_from_realized(s, n, m);
  }
  const Json& rows = field(j, "coeffs");
  if (!rows.is_array() || rows.size() != n) throw InputError("coeffs must be a level x level array");
  LevelElement u = zero_element(s, n);
  for (std::size_t a = 0; a < n; ++a) {
    if (!rows[a].is_array() || rows[a].size() != n) throw InputError("coeffs must be a level x level array");
    for (std::size_t b = 0; b < n; ++b) {
      CVector c = cvector_from_json(rows[a][b]);
      if (static_cast<std::size_t>(c.size()) != s->dim)
        throw InputError("coefficient vector length differs from system dimension");
      u.at(a, b) = std::move(c);
    }
  }
  return u;
}

Json to_json(const LinearMap& phi) {
  Json j;
  j["source"] = to_json(*phi.source);
  j["target"] = to_json(*phi.target);
  Json imgs = Json::array();
  for (const auto& c : phi.images) imgs.push_back(to_json(c));
  j["images"] = std::move(imgs);
  return j;
}

LinearMap map_from_json(const Json& j) {
  const auto src = system_from_json(field(j, "source"));
  const auto tgt = system_from_json(field(j, "target"));
  if (j.contains("image_matrices")) {
    std::vector<CMatrix> mats;
    for (const auto& m : j.at("image_matrices")) mats.push_back(matrix_from_json(m));
    return map_from_matrices(src, tgt, mats);
  }
  LinearMap phi{src, tgt, {}};
  for (const auto& c : field(j, "images")) phi.images.push_back(cvector_from_json(c));
  check_map(phi);
  return phi;
}

Json to_json(const Subspace& s) {
  Json j;
  j["parent"] = to_json(*s.parent);
  Json g = Json::array();
  for (Eigen::Index c = 0; c < s.generators.cols(); ++c)
    g.push_back(to_json(CVector(s.generators.col(c).cast<cplx>())));
  j["generators"] = std::move(g);
  return j;
}

Subspace subspace_from_json(const Json& j) {
  const auto parent = system_from_json(field(j, "parent"));
  std::vector<CVector> gens;
  for (const auto& g : field(j, "generators")) gens.push_back(cvector_from_json(g));
  return make_subspace(parent, gens);
}

Json to_json(const Certificate& c) {
  Json j;
  j["kind"] = to_string(c.kind);
  j["value"] = c.value;
  j["slack"] = c.slack;
  j["level"] = c.level;
  j["seed"] = c.seed;
  j["detail"] = c.detail;
  if (c.vector.size() > 0) j["vector"] = to_json(c.vector);
  if (!c.matrices.empty()) {
    Json m = Json::array();
    for (const auto& x : c.matrices) m.push_back(to_json(x));
    j["matrices"] = std::move(m);
  }
  if (!c.functional.empty()) {
    Json f = Json::array();
    for (const auto& x : c.functional) f.push_back(to_json(x));
    j["functional"] = std::move(f);
  }
  if (!c.blocks.empty()) {
    Json b = Json::array();
    for (const auto& blk : c.blocks) {
      Json e;
      e["a"] = to_json(blk.a);
      e["p"] = to_json(blk.p);
      if (blk.q.system) e["q"] = to_json(blk.q);
      b.push_back(std::move(e));
    }
    j["blocks"] = std::move(b);
  }
  return j;
}

Json to_json(const ConeVerdict& v) {
  Json j;
  j["answer"] = to_string(v.answer);
  j["tolerance"] = v.tol;
  j["route"] = v.route;
  j["certificate"] = to_json(v.cert);
  return j;
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << dump(j);
}

}  // namespace ostk
