#include "sympwidth/spec_json.hpp"

#include <set>
#include <string>

#include "sympwidth/errors.hpp"
#include "sympwidth/scan.hpp"

namespace sympwidth {

using nlohmann::json;

namespace {

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw SpecError(child(path, key), "missing required field");
  return obj.at(key);
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw SpecError(path, "expected a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SpecError(path, "expected an integer");
  return v.get<int>();
}

Vec vector_of(const json& v, const std::string& path) {
  if (!v.is_array()) throw SpecError(path, "expected an array of numbers");
  if (v.empty()) throw SpecError(path, "array is empty");
  if (v.size() > static_cast<std::size_t>(kMaxDim))
    throw SpecError(path, "array longer than the dimension cap");
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = number(v[i], child(path, i));
  return out;
}

std::vector<int> ints_of(const json& v, const std::string& path) {
  if (!v.is_array()) throw SpecError(path, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(integer(v[i], child(path, i)));
  return out;
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw SpecError(child(path, key), "unknown field");
}

void check_length(const Vec& v, Eigen::Index expected, const std::string& path) {
  if (v.size() != expected)
    throw SpecError(path, "expected " + std::to_string(expected) + " entries, got " +
                              std::to_string(v.size()));
}

// Runs a constructor, turning its argument errors into SpecErrors at `path`.
template <typename F>
auto build(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const SpecError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SpecError(path, e.what());
  }
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError("", what + " is not valid JSON: " + e.what());
  }
}

Body parse_body(const json& spec, const std::string& path) {
  if (!spec.is_object()) throw SpecError(path, "body spec must be a JSON object");
  const json& type_field = field(spec, "type", path);
  if (!type_field.is_string()) throw SpecError(child(path, "type"), "expected a string");
  const std::string type = type_field.get<std::string>();

  if (type == "ellipsoid") {
    check_keys(spec, {"type", "a", "b", "center"}, path);
    const Vec a = vector_of(field(spec, "a", path), child(path, "a"));
    const Vec b = spec.contains("b") ? vector_of(spec.at("b"), child(path, "b")) : a;
    check_length(b, a.size(), child(path, "b"));
    Vec center = Vec::Zero(2 * a.size());
    if (spec.contains("center")) {
      center = vector_of(spec.at("center"), child(path, "center"));
      check_length(center, 2 * a.size(), child(path, "center"));
    }
    return build(path, [&] { return Body::ellipsoid(a, b, center); });
  }
  if (type == "polydisk") {
    check_keys(spec, {"type", "r"}, path);
    const Vec r = vector_of(field(spec, "r", path), child(path, "r"));
    return build(path, [&] { return Body::polydisk(r); });
  }
  if (type == "polyannulus") {
    check_keys(spec, {"type", "a", "b"}, path);
    const Vec a = vector_of(field(spec, "a", path), child(path, "a"));
    const Vec b = vector_of(field(spec, "b", path), child(path, "b"));
    check_length(b, a.size(), child(path, "b"));
    return build(path, [&] { return Body::polyannulus(a, b); });
  }
  if (type == "union") {
    check_keys(spec, {"type", "members"}, path);
    const json& members = field(spec, "members", path);
    const std::string mpath = child(path, "members");
    if (!members.is_array() || members.empty())
      throw SpecError(mpath, "expected a non-empty array of bodies");
    std::vector<Body> parsed;
    for (std::size_t i = 0; i < members.size(); ++i) {
      parsed.push_back(parse_body(members[i], child(mpath, i)));
      if (parsed.back().dim_n() != parsed.front().dim_n())
        throw SpecError(child(mpath, i), "member dimension differs from the first member");
    }
    return Body::union_of(std::move(parsed));
  }
  if (type == "lagrangian-bidisk") {
    check_keys(spec, {"type"}, path);
    return Body::lagrangian_bidisk();
  }
  if (type == "point-cloud") {
    check_keys(spec, {"type", "points"}, path);
    const json& points = field(spec, "points", path);
    const std::string ppath = child(path, "points");
    if (!points.is_array() || points.empty())
      throw SpecError(ppath, "expected a non-empty array of points");
    Eigen::MatrixXd cloud;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const Vec p = vector_of(points[i], child(ppath, i));
      if (i == 0) {
        if (p.size() % 2 != 0) throw SpecError(child(ppath, i), "points need even length");
        cloud.resize(p.size(), static_cast<Eigen::Index>(points.size()));
      }
      check_length(p, cloud.rows(), child(ppath, i));
      cloud.col(static_cast<Eigen::Index>(i)) = p;
    }
    return build(path, [&] { return Body::point_cloud(cloud); });
  }
  if (type == "linear-image") {
    check_keys(spec, {"type", "matrix", "inner"}, path);
    Body inner = parse_body(field(spec, "inner", path), child(path, "inner"));
    const json& rows = field(spec, "matrix", path);
    const std::string mpath = child(path, "matrix");
    const auto d = static_cast<std::size_t>(2 * inner.dim_n());
    if (!rows.is_array() || rows.size() != d)
      throw SpecError(mpath, "expected " + std::to_string(d) + " rows (2n of the inner body)");
    Mat m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
      const Vec row = vector_of(rows[i], child(mpath, i));
      check_length(row, static_cast<Eigen::Index>(d), child(mpath, i));
      m.row(static_cast<Eigen::Index>(i)) = row.transpose();
    }
    return build(path, [&] { return Body::linear_image(m, std::move(inner)); });
  }
  if (type == "toric-profile") {
    check_keys(spec, {"type", "boxes"}, path);
    const json& boxes = field(spec, "boxes", path);
    const std::string bpath = child(path, "boxes");
    if (!boxes.is_array() || boxes.empty())
      throw SpecError(bpath, "expected a non-empty array of boxes");
    std::vector<MomentBox> parsed;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      const std::string ipath = child(bpath, i);
      if (!boxes[i].is_object()) throw SpecError(ipath, "box must be an object");
      check_keys(boxes[i], {"a", "b"}, ipath);
      const Vec lo = vector_of(field(boxes[i], "a", ipath), child(ipath, "a"));
      const Vec hi = vector_of(field(boxes[i], "b", ipath), child(ipath, "b"));
      check_length(hi, lo.size(), child(ipath, "b"));
      if (i > 0) check_length(lo, parsed.front().lo.size(), child(ipath, "a"));
      parsed.push_back({lo, hi});
    }
    auto profile = build(bpath, [&] { return ToricProfile::from_boxes(std::move(parsed)); });
    return Body::toric(std::move(profile));
  }
  if (type == "ramos-omega0") {
    check_keys(spec, {"type", "samples"}, path);
    const int samples =
        spec.contains("samples") ? integer(spec.at("samples"), child(path, "samples")) : 4096;
    auto profile = build(child(path, "samples"), [&] { return ramos_profile(samples); });
    return Body::toric(std::move(profile));
  }
  throw SpecError(child(path, "type"), "unknown body type '" + type + "'");
}

HamiltonianSystem parse_hamiltonian(const json& spec, int n, const std::string& path) {
  if (!spec.is_object()) throw SpecError(path, "Hamiltonian spec must be a JSON object");
  if (spec.size() != 1)
    throw SpecError(path, "expected exactly one of preset, hopf-trig, cartesian-poly");
  if (spec.contains("preset")) {
    const json& p = spec.at("preset");
    if (!p.is_string()) throw SpecError(child(path, "preset"), "expected a string");
    return build(child(path, "preset"),
                 [&] { return HamiltonianSystem::preset(p.get<std::string>(), n); });
  }
  if (spec.contains("hopf-trig")) {
    const std::string hpath = child(path, "hopf-trig");
    const json& h = spec.at("hopf-trig");
    if (!h.is_object()) throw SpecError(hpath, "expected an object");
    check_keys(h, {"terms", "degree"}, hpath);
    const int degree = h.contains("degree") ? integer(h.at("degree"), child(hpath, "degree")) : 2;
    const json& terms = field(h, "terms", hpath);
    const std::string tpath = child(hpath, "terms");
    if (!terms.is_array()) throw SpecError(tpath, "expected an array of terms");
    std::vector<TrigTerm> parsed;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string ipath = child(tpath, i);
      const json& t = terms[i];
      if (!t.is_object()) throw SpecError(ipath, "term must be an object");
      check_keys(t, {"ctheta", "cr", "coeff", "phase"}, ipath);
      TrigTerm term;
      term.k = ints_of(field(t, "ctheta", ipath), child(ipath, "ctheta"));
      if (static_cast<int>(term.k.size()) != n)
        throw SpecError(child(ipath, "ctheta"), "expected n = " + std::to_string(n) + " entries");
      term.p = t.contains("cr") ? ints_of(t.at("cr"), child(ipath, "cr")) : std::vector<int>{};
      if (static_cast<int>(term.p.size()) != n - 1)
        throw SpecError(child(ipath, "cr"), "expected n-1 = " + std::to_string(n - 1) + " entries");
      term.coeff = number(field(t, "coeff", ipath), child(ipath, "coeff"));
      const std::string phase =
          t.contains("phase") && t.at("phase").is_string() ? t.at("phase").get<std::string>() : "cos";
      if (t.contains("phase") && !t.at("phase").is_string())
        throw SpecError(child(ipath, "phase"), "expected \"cos\" or \"sin\"");
      if (phase != "cos" && phase != "sin")
        throw SpecError(child(ipath, "phase"), "expected \"cos\" or \"sin\"");
      term.sine = phase == "sin";
      parsed.push_back(std::move(term));
    }
    return build(hpath, [&] { return HamiltonianSystem::hopf_trig(n, std::move(parsed), degree); });
  }
  if (spec.contains("cartesian-poly")) {
    const std::string cpath = child(path, "cartesian-poly");
    const json& c = spec.at("cartesian-poly");
    if (!c.is_object()) throw SpecError(cpath, "expected an object");
    check_keys(c, {"monomials"}, cpath);
    const json& monomials = field(c, "monomials", cpath);
    const std::string mpath = child(cpath, "monomials");
    if (!monomials.is_array()) throw SpecError(mpath, "expected an array of monomials");
    std::vector<Monomial> parsed;
    for (std::size_t i = 0; i < monomials.size(); ++i) {
      const std::string ipath = child(mpath, i);
      const json& m = monomials[i];
      if (!m.is_object()) throw SpecError(ipath, "monomial must be an object");
      check_keys(m, {"exponents", "coeff"}, ipath);
      Monomial mono;
      mono.exponents = ints_of(field(m, "exponents", ipath), child(ipath, "exponents"));
      if (static_cast<int>(mono.exponents.size()) != 2 * n)
        throw SpecError(child(ipath, "exponents"),
                        "expected 2n = " + std::to_string(2 * n) + " entries");
      mono.coeff = number(field(m, "coeff", ipath), child(ipath, "coeff"));
      parsed.push_back(std::move(mono));
    }
    return build(cpath, [&] { return HamiltonianSystem::cartesian(n, std::move(parsed)); });
  }
  throw SpecError(path, "expected one of preset, hopf-trig, cartesian-poly");
}

Mat ellipsoid_form(const Body& body) {
  return std::visit(
      [&](const auto& v) -> Mat {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ellipsoid>) {
          Vec diag(2 * body.dim_n());
          diag << v.a.cwiseAbs2().cwiseInverse(), v.b.cwiseAbs2().cwiseInverse();
          return diag.asDiagonal();
        } else if constexpr (std::is_same_v<T, LinearImage>) {
          // {T x : x^T A x <= 1} = {y : y^T T^{-T} A T^{-1} y <= 1}.
          const Mat inner = ellipsoid_form(*v.inner);
          Eigen::FullPivLU<Mat> lu(v.matrix);
          if (!lu.isInvertible()) throw SpecError("", "linear image matrix is singular");
          const Mat inv = lu.inverse();
          return inv.transpose() * inner * inv;
        } else {
          throw SpecError("/type", "an ellipsoid (or a linear image of one) is required");
        }
      },
      body.variant());
}

}  // namespace sympwidth
