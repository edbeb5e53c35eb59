// qcp_cli: command-line front end. Every command prints one report and exits
// 0 when all of its checks pass, 1 when a check fails, 2 on a usage error.

#include "qcp/qcp.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using json = nlohmann::ordered_json;
using namespace qcp;

struct Config {
  std::string q = "1/2";
  unsigned precision = kDefaultPrecision;
  std::string format = "table";
  std::size_t dim_cap = kDefaultDimCap;
};

struct Report {
  std::string command;
  json config = json::object();
  json results = json::array();
  json summary = json::object();
  bool pass = true;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string sci(const QScalar& x, unsigned digits = 6) { return format_scalar(x, digits); }
std::string str(const Rational& r) { return r.str(); }

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("expected a comma-separated integer list, got '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

std::vector<RationalQ> parse_qs(const std::string& text) {
  std::vector<RationalQ> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(RationalQ::parse(item));
  if (out.empty()) throw UsageError("empty q list");
  return out;
}

RationalQ single_q(const Config& c) {
  auto qs = parse_qs(c.q);
  if (qs.size() != 1) throw UsageError("this command takes a single --q value");
  return qs.front();
}

Rational parse_rational(const std::string& text) {
  try {
    return Rational(text);
  } catch (const std::exception&) {
    throw UsageError("cannot parse rational '" + text + "'");
  }
}

/// "8" or "7.5" to twice the value.
int parse_doubled(const std::string& text) {
  const auto dot = text.find('.');
  try {
    if (dot == std::string::npos) return 2 * std::stoi(text);
    const std::string frac = text.substr(dot + 1);
    if (frac != "5" && frac != "0") throw std::invalid_argument(text);
    const int whole = std::stoi(text.substr(0, dot));
    return 2 * whole + (frac == "5" ? 1 : 0);
  } catch (const std::exception&) {
    throw UsageError("--lmax must be an integer or half-integer, got '" + text + "'");
  }
}

json base_config(const Config& c) {
  return json{{"q", c.q}, {"precision", c.precision}, {"format", c.format}};
}

// ---------------------------------------------------------------------------
// Output

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  return v.dump();
}

std::string csv_cell(const json& v) {
  std::string s = cell(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::vector<std::string> columns(const json& rows) {
  std::vector<std::string> cols;
  for (const auto& row : rows)
    for (const auto& [k, v] : row.items())
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  return cols;
}

void print_table(const Report& r, std::ostream& os) {
  os << "# " << r.command;
  for (const auto& [k, v] : r.config.items()) os << " " << k << "=" << cell(v);
  os << "\n";
  const auto cols = columns(r.results);
  if (!cols.empty()) {
    std::vector<std::size_t> width(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) width[i] = cols[i].size();
    for (const auto& row : r.results)
      for (std::size_t i = 0; i < cols.size(); ++i)
        if (row.contains(cols[i])) width[i] = std::max(width[i], cell(row[cols[i]]).size());
    auto line = [&](auto get) {
      for (std::size_t i = 0; i < cols.size(); ++i) {
        const std::string s = get(i);
        os << s << std::string(width[i] - s.size() + (i + 1 < cols.size() ? 2 : 0), ' ');
      }
      os << "\n";
    };
    line([&](std::size_t i) { return cols[i]; });
    for (const auto& row : r.results)
      line([&](std::size_t i) { return row.contains(cols[i]) ? cell(row[cols[i]]) : std::string("-"); });
  }
  for (const auto& [k, v] : r.summary.items()) os << k << ": " << cell(v) << "\n";
  os << "pass: " << (r.pass ? "yes" : "no") << "\n";
}

void print_csv(const Report& r, std::ostream& os) {
  const auto cols = columns(r.results);
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  for (const auto& row : r.results) {
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << (row.contains(cols[i]) ? csv_cell(row[cols[i]]) : "");
    os << "\n";
  }
}

void emit(const Report& r, const std::string& format) {
  if (format == "json") {
    json out{{"command", r.command}, {"config", r.config}, {"results", r.results}, {"pass", r.pass}};
    if (!r.summary.empty()) out["summary"] = r.summary;
    std::cout << out.dump(2) << "\n";
  } else if (format == "csv") {
    print_csv(r, std::cout);
  } else {
    print_table(r, std::cout);
  }
}

// ---------------------------------------------------------------------------
// Commands

HighestWeight weight_from(const std::string& n, int ell) {
  auto w = HighestWeight(parse_ints(n));
  if (ell > 0 && w.ell() != ell) throw UsageError("--n has " + std::to_string(w.ell()) + " labels but --ell is " + std::to_string(ell));
  return w;
}

Report cmd_irrep(const Config& c, const std::string& n, int ell, const std::string& out_dir) {
  Report r{"irrep", base_config(c)};
  const auto q = single_q(c);
  const auto w = weight_from(n, ell);
  r.config["ell"] = w.ell();
  r.config["n"] = w.str();
  r.config["dim_cap"] = c.dim_cap;
  const auto mod = build_irrep(w, q, c.precision, c.dim_cap);
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  for (char kind : {'K', 'E', 'F'})
    for (int k = 1; k <= mod.ell(); ++k) {
      json row{{"op", std::string(1, kind) + std::to_string(k)}, {"dim", mod.dim()}, {"nonzeros", mod.op(kind, k).nonzeros()}};
      if (!out_dir.empty()) {
        const auto path = std::filesystem::path(out_dir) / (std::string(1, kind) + std::to_string(k) + ".txt");
        std::ofstream(path) << export_matrix(mod, kind, k);
        row["file"] = path.string();
      }
      r.results.push_back(row);
    }
  r.summary["dim"] = mod.dim();
  r.summary["weyl_dim"] = weyl_dimension(w).str();
  r.pass = BigInt(mod.dim()) == weyl_dimension(w);
  return r;
}

Report cmd_verify_relations(const Config& c, const std::string& n, int ell, const std::string& tol_text) {
  Report r{"verify-relations", base_config(c)};
  const auto q = single_q(c);
  const auto w = weight_from(n, ell);
  r.config["ell"] = w.ell();
  r.config["n"] = w.str();
  r.config["tol"] = tol_text;
  r.config["dim_cap"] = c.dim_cap;
  const auto mod = build_irrep(w, q, c.precision, c.dim_cap);
  WorkingPrecision guard(c.precision);
  QScalar tol;
  try {
    tol = QScalar(tol_text);
  } catch (const std::exception&) {
    throw UsageError("cannot parse --tol '" + tol_text + "'");
  }
  QScalar worst = 0;
  for (const auto& res : verify_relations(mod, tol)) {
    r.results.push_back({{"relation", res.relation}, {"i", res.i}, {"j", res.j}, {"residual", sci(res.residual)},
                         {"row", res.row}, {"col", res.col}, {"pass", res.pass}});
    r.pass = r.pass && res.pass;
    worst = max(worst, res.residual);
  }
  r.summary["dim"] = mod.dim();
  r.summary["max_residual"] = sci(worst);
  return r;
}

Report cmd_ln_kernel(const Config& c, int ell, int N, int n1_max) {
  Report r{"ln-kernel", base_config(c)};
  const auto q = single_q(c);
  if (ell < 1) throw UsageError("--ell must be positive");
  if (n1_max < 0) throw UsageError("--n1max must be non-negative");
  r.config["ell"] = ell;
  r.config["N"] = N;
  r.config["n1max"] = n1_max;
  r.config["dim_cap"] = c.dim_cap;
  std::size_t total = 0;
  bool ill = false;
  for (const auto& b : ker_El_numeric(ell, N, n1_max, q, c.precision, c.dim_cap)) {
    r.results.push_back({{"ell", ell}, {"N", N}, {"n1", b.n1}, {"weight", b.weight.str()},
                         {"dim_constrained", b.dim_constrained}, {"dim_kernel", b.dim_kernel},
                         {"ill_conditioned", b.ill_conditioned}});
    total += b.dim_kernel;
    ill = ill || b.ill_conditioned;
  }
  const auto expected = ker_El_combinatorial(ell, N);
  r.summary["total_kernel"] = total;
  r.summary["combinatorial"] = expected;
  r.summary["ill_conditioned"] = ill;
  r.pass = total == expected && !ill;
  return r;
}

Report cmd_ring_dims(const Config& c, int ell, int N_max) {
  Report r{"ring-dims", base_config(c)};
  if (ell < 1 || N_max < 0) throw UsageError("need --ell >= 1 and --N >= 0");
  r.config["ell"] = ell;
  r.config["N"] = N_max;
  for (int N = 0; N <= N_max; ++N) {
    const auto dim = graded_dim(ell + 1, N);
    const auto ker = ker_El_combinatorial(ell, N);
    r.results.push_back({{"generators", ell + 1}, {"N", N}, {"graded_dim", dim}, {"kernel_count", ker}, {"match", dim == ker}});
    r.pass = r.pass && dim == ker;
  }
  return r;
}

Report cmd_factorize(const Config& c, const std::string& z, int N, const std::string& r_text) {
  Report r{"factorize", base_config(c)};
  const QMonomial Z(parse_ints(z));
  r.config["z"] = Z.str();
  r.config["N"] = N;
  if (N < 0 || N > Z.degree()) throw UsageError("--N must lie between 0 and the degree of --z");
  Factorization f;
  if (r_text.empty()) {
    f = tensor_factorize(Z, N);
  } else {
    r.config["r"] = r_text;
    const auto parts = parse_ints(r_text);
    int sum = 0;
    for (int v : parts) sum += v;
    if (sum != N) throw UsageError("--r must sum to --N");
    f = tensor_factorize(Z, parts);
  }
  auto w = f.Z1.word();
  const auto w2 = f.Z2.word();
  w.insert(w.end(), w2.begin(), w2.end());
  const auto nf = normal_order(w, Z.generators());
  const bool ok = nf.monomial == Z && nf.exponent == -f.R;
  r.results.push_back({{"Z", Z.str()}, {"N", N}, {"k", f.k}, {"r", QMonomial(f.r).str()}, {"R", f.R},
                       {"Z1", f.Z1.str()}, {"Z2", f.Z2.str()}, {"Z1Z2_exponent", nf.exponent}, {"verified", ok}});
  r.pass = ok;
  return r;
}

Report cmd_euler_cp1(const Config& c, int N, const std::string& lmax_text) {
  Report r{"euler-cp1", base_config(c)};
  const auto q = single_q(c);
  const int l_max2 = parse_doubled(lmax_text);
  r.config["N"] = N;
  r.config["lmax"] = lmax_text;
  if (l_max2 < std::abs(N) + 4) throw UsageError("--lmax must be at least |N|/2 + 2");
  const auto e = cp1_euler_characteristic(N, l_max2, q, c.precision);
  json row{{"N", N}, {"dim_ker", e.dim_ker}, {"dim_coker", e.dim_coker}, {"chi", e.chi}, {"expected", 1 - N},
           {"stable", e.stable}};
  if (e.chi_previous) row["chi_lmax_minus_1"] = *e.chi_previous;
  row["ill_conditioned"] = e.ill_conditioned;
  r.results.push_back(row);
  r.pass = e.chi == 1 - N && e.stable && !e.ill_conditioned;
  return r;
}

Report cmd_cp2_identity(const Config& c, int n_min, int n_max) {
  Report r{"cp2-identity", base_config(c)};
  if (n_min < 0 || n_max < n_min) throw UsageError("need 0 <= --nmin <= --nmax");
  r.config["nmin"] = n_min;
  r.config["nmax"] = n_max;
  std::vector<int> ns;
  for (int n = n_min; n <= n_max; ++n) ns.push_back(n);
  WorkingPrecision guard(c.precision);
  QScalar worst = 0;
  for (const auto& row : cp2_coefficient_identity(ns, parse_qs(c.q), c.precision)) {
    r.results.push_back({{"n", row.n}, {"q", row.q.str()}, {"residual_cancel", sci(row.residual_cancel)},
                         {"residual_total", sci(row.residual_total)}, {"pass", row.pass}});
    r.pass = r.pass && row.pass;
    worst = max(worst, max(row.residual_cancel, row.residual_total));
  }
  r.summary["tolerance"] = "1e-" + std::to_string(c.precision / 2);
  r.summary["max_residual"] = sci(worst);
  return r;
}

Report cmd_shuffle_certificate(const Config& c, int ell, const std::string& m_text) {
  Report r{"shuffle-certificate", base_config(c)};
  if (ell < 1) throw UsageError("--ell must be positive");
  const Rational m = parse_rational(m_text);
  r.config["ell"] = ell;
  r.config["m"] = str(m);
  const auto chains = find_chains(ell);
  const auto cert = verify_membership(ell);
  r.summary["patterns"] = enumerate_shuffles(ell).size();
  r.summary["membership"] = cert.member;
  r.summary["membership_pairs"] = cert.from_chains ? "chains" : "spanning tree";
  json coeffs = json::array();
  for (const auto& v : cert.coefficients) coeffs.push_back(str(v));
  r.summary["certificate"] = coeffs;
  if (!chains) {
    r.summary["chains"] = "none: search exhausted";
    r.pass = false;
    return r;
  }
  const auto sol = solve_cocycle_system(*chains, m);
  const auto edges = chain_edges(*chains);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    r.results.push_back({{"i", i + 1}, {"tail", pretty_pattern(edges[i].tail)}, {"head", pretty_pattern(edges[i].head)},
                         {"x", str(sol.x[i])}, {"closed_form", str(sol.closed_form[i])}});
  }
  json c1 = json::array(), c2 = json::array();
  for (const auto& p : chains->chain1) c1.push_back(pretty_pattern(p));
  for (const auto& p : chains->chain2) c2.push_back(pretty_pattern(p));
  r.summary["chain1"] = c1;
  r.summary["chain2"] = c2;
  r.summary["bridge"] = chains->bridge;
  r.summary["k"] = str(sol.k);
  r.summary["k_equals_2rm"] = sol.k_matches;
  r.summary["magnitudes_match"] = sol.magnitudes_match;
  r.summary["sign_flipped"] = sol.sign_flipped;
  r.pass = sol.k_matches && sol.magnitudes_match && cert.member;
  return r;
}

Report cmd_coboundary_check(const Config& c, int n, std::size_t samples, std::size_t cochains, const std::string& sigma) {
  Report r{"coboundary-check", base_config(c)};
  if (n < 0 || n > 4) throw UsageError("--n must lie in 0..4");
  r.config["n"] = n;
  r.config["samples"] = samples;
  r.config["cochains"] = cochains;
  r.config["sigma"] = sigma;
  std::vector<std::vector<Rational>> twists;
  if (sigma.empty()) {
    twists = {{Rational(1), Rational(1)}, {Rational(2), Rational(1, 2)}};
  } else {
    std::vector<Rational> t;
    std::stringstream ss(sigma);
    std::string item;
    while (std::getline(ss, item, ',')) t.push_back(parse_rational(item));
    for (const auto& v : t)
      if (v == 0) throw UsageError("--sigma eigenvalues must be non-zero");
    twists.push_back(t);
  }
  for (const auto& t : twists) {
    const auto rep = twisted_coboundary_check(n, samples, t, cochains);
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + str(t[i]);
    r.results.push_back({{"n", n}, {"sigma", s}, {"cochains", rep.cochains}, {"tuples", rep.tuples_per_cochain},
                         {"exhaustive", rep.exhaustive}, {"b2_nonzero", rep.square_nonzero},
                         {"b_image_nonzero", rep.image_nonzero}, {"twist_failures", rep.invariance_failures},
                         {"pass", rep.pass}});
    r.pass = r.pass && rep.pass;
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum projective space computations"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--q", cfg.q, "deformation parameter P/R in (0,1)");
    sub->add_option("--precision", cfg.precision, "working precision in decimal digits (>= 30)")
        ->check(CLI::Range(kMinPrecision, 100000u));
    sub->add_option("--format", cfg.format, "table, json or csv")->check(CLI::IsMember({"table", "json", "csv"}));
    sub->add_option("--dim-cap", cfg.dim_cap, "largest irrep dimension to build");
  };

  std::string n_text = "1", tol_text = "1e-40", out_dir, lmax_text = "8", z_text, r_text, m_text = "1", sigma;
  int ell = 0, N = 0, n1_max = 4, n_min = 1, n_max = 20, degree = 2;
  std::size_t samples = 500, cochains = 50;
  bool tol_given = false;

  auto* irrep = app.add_subcommand("irrep", "build an irrep and export its generator matrices");
  common(irrep);
  irrep->add_option("--n", n_text, "highest weight, comma-separated")->required();
  irrep->add_option("--ell", ell, "rank check for --n");
  irrep->add_option("--out", out_dir, "directory for exported matrices");

  auto* rel = app.add_subcommand("verify-relations", "check the algebra relations on an irrep");
  common(rel);
  rel->add_option("--n", n_text, "highest weight, comma-separated")->required();
  rel->add_option("--ell", ell, "rank check for --n");
  rel->add_option("--tol", tol_text, "largest accepted residual")->each([&](const std::string&) { tol_given = true; });

  auto* lnk = app.add_subcommand("ln-kernel", "kernel of E_ell on sections of L_N, block by block");
  common(lnk);
  lnk->add_option("--ell", ell)->required();
  lnk->add_option("--N", N)->required();
  lnk->add_option("--n1max", n1_max, "largest block label");

  auto* ring = app.add_subcommand("ring-dims", "graded dimensions of the coordinate ring");
  common(ring);
  ring->add_option("--ell", ell)->required();
  ring->add_option("--N", N, "largest degree")->required();

  auto* fac = app.add_subcommand("factorize", "split a monomial as Z1 Z2 = q^-R Z");
  common(fac);
  fac->add_option("--z", z_text, "exponents of Z, comma-separated")->required();
  fac->add_option("--N", N, "degree of Z1")->required();
  fac->add_option("--r", r_text, "explicit exponents of Z1 (default: greedy)");

  auto* euler = app.add_subcommand("euler-cp1", "Euler characteristic of L_N on CP^1_q");
  common(euler);
  euler->add_option("--N", N)->required();
  euler->add_option("--lmax", lmax_text, "spin cutoff, integer or half-integer");

  auto* cp2 = app.add_subcommand("cp2-identity", "coefficient identities for CP^2_q");
  common(cp2);
  cp2->add_option("--nmin", n_min);
  cp2->add_option("--nmax", n_max);

  auto* shuf = app.add_subcommand("shuffle-certificate", "chain construction and coboundary certificate");
  common(shuf);
  shuf->add_option("--ell", ell)->required();
  shuf->add_option("--m", m_text, "scale of tau");

  auto* cob = app.add_subcommand("coboundary-check", "b_sigma^2 = 0 and twist invariance on a toy algebra");
  common(cob);
  cob->add_option("--n", degree, "cochain degree (0..4)");
  cob->add_option("--samples", samples, "tuples checked per cochain (exhaustive when fewer exist)");
  cob->add_option("--cochains", cochains, "random cochains per twist");
  cob->add_option("--sigma", sigma, "twist eigenvalues, comma-separated (default: identity and 2,1/2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cp2->parsed() && cp2->count("--q") == 0) cfg.q = "1/2,3/4,9/10";
    parse_qs(cfg.q);  // validate early: a bad q is a usage error
    if (rel->parsed() && !tol_given) tol_text = "1e-" + std::to_string(2 * cfg.precision / 3);

    Report report;
    if (irrep->parsed()) report = cmd_irrep(cfg, n_text, ell, out_dir);
    else if (rel->parsed()) report = cmd_verify_relations(cfg, n_text, ell, tol_text);
    else if (lnk->parsed()) report = cmd_ln_kernel(cfg, ell, N, n1_max);
    else if (ring->parsed()) report = cmd_ring_dims(cfg, ell, N);
    else if (fac->parsed()) report = cmd_factorize(cfg, z_text, N, r_text);
    else if (euler->parsed()) report = cmd_euler_cp1(cfg, N, lmax_text);
    else if (cp2->parsed()) report = cmd_cp2_identity(cfg, n_min, n_max);
    else if (shuf->parsed()) report = cmd_shuffle_certificate(cfg, ell, m_text);
    else if (cob->parsed()) report = cmd_coboundary_check(cfg, degree, samples, cochains, sigma);
    emit(report, cfg.format);
    return report.pass ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    json failure{{"command", app.get_subcommands().front()->get_name()}, {"error", e.what()}, {"pass", false}};
    std::cout << failure.dump(2) << "\n";
    return 1;
  }
}
