/* Command line front end.  Every subcommand prints one JSON envelope
   {command, params, result, schema} on stdout with keys sorted, so
   equal inputs produce byte-equal outputs.  Timing data is attached
   only under --timings to keep the default output reproducible.

   Exit codes: 0 success, 2 hypothesis not met, 1 error, 64 usage. */

#include <chrono>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qnt/certify.hpp"
#include "qnt/class_group.hpp"
#include "qnt/errors.hpp"
#include "qnt/ideals.hpp"
#include "qnt/integers.hpp"
#include "qnt/mordell.hpp"
#include "qnt/quad_ring.hpp"
#include "qnt/times_table.hpp"

namespace {

using json = nlohmann::json;
using qnt::Int;

/* Integers that fit in 64 bits stay JSON numbers; anything larger is
   emitted as a decimal string to avoid silent precision loss. */
json jint(const Int& x) {
  if (x.fits_slong_p()) return json(static_cast<long>(x.get_si()));
  return json(x.get_str());
}

struct timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  long ms() const {
    auto dt = std::chrono::steady_clock::now() - t0;
    return static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(dt).count());
  }
};

struct output_options {
  std::string format = "json";
  bool timings = false;
};

json ideal_json(const qnt::quad_ideal& I, const qnt::ring_of_integers_model& model) {
  json j;
  j["n"] = jint(I.n);
  j["c"] = jint(I.c);
  j["m"] = jint(I.m);
  j["norm"] = jint(I.norm);
  j["text"] = qnt::render_ideal(I, model);
  return j;
}

json solution_json(const qnt::mordell_solution& s) {
  json j;
  j["m"] = jint(s.m);
  j["x"] = jint(s.x);
  j["y"] = jint(s.y);
  return j;
}

/* Flattened key paths, one "path<TAB>value" line per leaf.  String
   leaves are emitted raw; none of the rendered strings contain tabs
   or newlines, so rows stay parseable. */
void flatten(const json& j, const std::string& path, std::vector<std::string>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten(j[i], path + "." + std::to_string(i), out);
  } else if (j.is_string()) {
    out.push_back(path + "\t" + j.get<std::string>());
  } else {
    out.push_back(path + "\t" + j.dump());
  }
}

std::string sweep_table(const json& rows);

/* Sweep rows get a dedicated tabular layout; every other envelope is
   flattened generically. */
void emit(const std::string& command, const json& params, const json& result,
          const json& durations, const output_options& opts) {
  json env;
  env["command"] = command;
  env["params"] = params;
  env["result"] = result;
  env["schema"] = 1;
  if (opts.timings) env["durations_ms"] = durations;
  if (opts.format == "table") {
    if (command == "sweep") {
      std::cout << sweep_table(result["rows"]);
      return;
    }
    std::vector<std::string> lines;
    flatten(env, "", lines);
    for (const auto& line : lines) std::cout << line << "\n";
    return;
  }
  std::cout << env.dump(2) << "\n";
}

/* class-group */

int cmd_class_group(long d_in, const std::string& method_name,
                    const std::vector<long>& m_in, const output_options& opts) {
  Int d(d_in);
  json params;
  params["d"] = jint(d);
  params["method"] = method_name;
  qnt::cg_method method =
      method_name == "mset" ? qnt::cg_method::mset : qnt::cg_method::minkowski;
  std::optional<std::vector<Int>> m_set;
  if (!m_in.empty()) {
    m_set.emplace();
    for (long m : m_in) m_set->push_back(Int(m));
    json jm = json::array();
    for (long m : m_in) jm.push_back(m);
    params["m"] = jm;
  }
  timer t;
  qnt::class_group_descriptor g = qnt::class_group(d, method, m_set);
  long t_group = t.ms();
  qnt::ring_of_integers_model model = qnt::ring_of_integers(d);
  json gens = json::array();
  for (const auto& [I, order] : g.generators) {
    json e;
    e["ideal"] = ideal_json(I, model);
    e["order"] = jint(order);
    gens.push_back(e);
  }
  json result;
  result["d"] = jint(g.d);
  result["delta"] = jint(g.delta);
  result["h"] = jint(g.h);
  result["generators"] = gens;
  result["method"] = method_name;
  json durations;
  durations["class_group"] = t_group;
  durations["total"] = t.ms();
  emit("class-group", params, result, durations, opts);
  return 0;
}

/* class-number */

int cmd_class_number(long d_in, const output_options& opts) {
  Int d(d_in);
  json params;
  params["d"] = jint(d);
  timer t;
  timer t_each;
  Int h_group = qnt::class_group(d).h;
  long ms_group = t_each.ms();
  t_each = timer{};
  Int h_analytic = qnt::class_number_analytic(d);
  long ms_analytic = t_each.ms();
  t_each = timer{};
  Int h_forms = qnt::class_number_forms_oracle(d);
  long ms_forms = t_each.ms();
  if (h_group != h_analytic || h_group != h_forms)
    throw std::logic_error("class-number: the three oracles disagree");
  json oracles;
  oracles["analytic"] = jint(h_analytic);
  oracles["forms"] = jint(h_forms);
  oracles["group"] = jint(h_group);
  json result;
  result["d"] = jint(d);
  result["h"] = jint(h_group);
  result["oracles"] = oracles;
  json durations;
  durations["analytic"] = ms_analytic;
  durations["forms"] = ms_forms;
  durations["group"] = ms_group;
  durations["total"] = t.ms();
  emit("class-number", params, result, durations, opts);
  return 0;
}

/* mordell */

json hypotheses_json(const qnt::mordell_instance& inst) {
  json h;
  h["negative"] = inst.negative;
  h["squarefree"] = inst.squarefree;
  h["residue_23_mod4"] = inst.residue_23_mod4;
  h["class_gcd3"] = inst.class_gcd3;
  if (inst.negative && inst.squarefree && inst.residue_23_mod4)
    h["h"] = jint(inst.h);
  else
    h["h"] = nullptr;
  return h;
}

const char* outcome_name(qnt::mordell_outcome o) {
  switch (o) {
    case qnt::mordell_outcome::solutions: return "solutions";
    case qnt::mordell_outcome::no_integer_m: return "no_integer_m";
    default: return "modular_obstruction";
  }
}

int cmd_mordell(long d_in, bool trace, long brute_bound, const output_options& opts) {
  Int d(d_in);
  json params;
  params["d"] = jint(d);
  params["trace"] = trace;
  params["brute_bound"] = brute_bound;
  timer t;
  timer t_stage;
  qnt::mordell_instance inst = qnt::check_hypotheses(d);
  long ms_hypotheses = t_stage.ms();
  json result;
  result["d"] = jint(d);
  result["hypotheses"] = hypotheses_json(inst);
  json durations;
  durations["hypotheses"] = ms_hypotheses;
  if (!inst.qualifies()) {
    /* Without the hypotheses there is no descent argument; a bounded
       point search is reported instead, explicitly labeled as such. */
    t_stage = timer{};
    auto points = qnt::brute_force_points(d, Int(brute_bound));
    json jp = json::array();
    for (const auto& [x, y] : points) {
      json p;
      p["x"] = jint(x);
      p["y"] = jint(y);
      jp.push_back(p);
    }
    json search;
    search["bound"] = brute_bound;
    search["label"] = "search, not proof";
    search["points"] = jp;
    result["search"] = search;
    durations["search"] = t_stage.ms();
    durations["total"] = t.ms();
    emit("mordell", params, result, durations, opts);
    return 2;
  }
  t_stage = timer{};
  qnt::mordell_result r = qnt::solve(inst);
  durations["solve"] = t_stage.ms();
  json sols = json::array();
  for (const auto& s : r.solutions) sols.push_back(solution_json(s));
  result["outcome"] = outcome_name(r.outcome);
  result["solutions"] = sols;
  json certs;
  certs["x_odd"] = qnt::x_odd_certificate(d);
  if (r.solutions.empty()) {
    certs["gcd"] = nullptr;
  } else {
    bool all = true;
    for (const auto& s : r.solutions) all = all && qnt::gcd_certificate(d, s.y);
    certs["gcd"] = all;
  }
  certs["modulus"] =
      r.obstruction_modulus ? jint(*r.obstruction_modulus) : json(nullptr);
  result["certificates"] = certs;
  if (trace) {
    t_stage = timer{};
    json traces = json::array();
    for (const auto& s : r.solutions) {
      qnt::descent_report rep = qnt::descent_trace(d, s.x, s.y);
      json stages = json::array();
      for (const auto& st : rep.stages) {
        json e;
        e["name"] = st.name;
        e["detail"] = st.detail;
        stages.push_back(e);
      }
      json tr;
      tr["x"] = jint(s.x);
      tr["y"] = jint(s.y);
      tr["stages"] = stages;
      traces.push_back(tr);
    }
    result["traces"] = traces;
    durations["trace"] = t_stage.ms();
  }
  durations["total"] = t.ms();
  emit("mordell", params, result, durations, opts);
  return 0;
}

/* ideal */

int cmd_ideal(long d_in, const std::vector<std::string>& gens, bool with_factors,
              const output_options& opts) {
  Int d(d_in);
  json params;
  params["d"] = jint(d);
  params["gens"] = gens;
  params["factor"] = with_factors;
  timer t;
  qnt::ring_of_integers_model model = qnt::ring_of_integers(d);
  std::vector<qnt::quad_elem<Int>> elems;
  for (const auto& g : gens) elems.push_back(qnt::parse_elem(g, model));
  timer t_stage;
  qnt::quad_ideal I = qnt::ideal_from_generators(model.params, elems);
  long ms_construct = t_stage.ms();
  json result;
  result["d"] = jint(d);
  result["ideal"] = ideal_json(I, model);
  t_stage = timer{};
  std::optional<qnt::quad_elem<Int>> gen = qnt::is_principal(I);
  long ms_principal = t_stage.ms();
  result["principal"] = static_cast<bool>(gen);
  result["generator"] = gen ? json(qnt::render_elem(*gen, model)) : json(nullptr);
  json durations;
  durations["construct"] = ms_construct;
  durations["principal"] = ms_principal;
  if (with_factors) {
    t_stage = timer{};
    qnt::ideal_factorization fac = qnt::factor_ideal(I);
    json jf = json::array();
    for (const auto& [P, e] : fac) {
      json entry;
      entry["ideal"] = ideal_json(P, model);
      entry["exponent"] = jint(e);
      entry["prime"] = qnt::is_prime_ideal(P);
      jf.push_back(entry);
    }
    result["factors"] = jf;
    durations["factor"] = t_stage.ms();
  }
  durations["total"] = t.ms();
  emit("ideal", params, result, durations, opts);
  return 0;
}

/* normalize */

json coords_json(const qnt::normal_form<Int>& nf,
                 const std::function<std::string(const qnt::poly_var&)>& name) {
  json out = json::array();
  for (const auto& c : nf.coords) out.push_back(qnt::render_poly(c, name));
  return out;
}

int cmd_normalize(long a_in, long b_in, const std::string& expr,
                  const std::string& equals, const output_options& opts) {
  json params;
  params["a"] = a_in;
  params["b"] = b_in;
  params["expr"] = expr;
  if (!equals.empty()) params["equals"] = equals;
  timer t;
  auto table = qnt::table_for_quad<Int>({Int(a_in), Int(b_in)});
  qnt::expr_symbols symbols;
  qnt::expr_ptr lhs = qnt::parse_ring_expr(expr, symbols);
  qnt::normal_form<Int> nf = qnt::normalize(lhs, table);
  std::map<long, std::string> spelling;
  for (const auto& [ident, id] : symbols.ids) spelling[id] = ident;
  auto name = [&spelling](const qnt::poly_var& v) {
    return spelling.at(v.var) + "_" + std::to_string(v.coord);
  };
  json result;
  result["a"] = a_in;
  result["b"] = b_in;
  result["coords"] = coords_json(nf, name);
  if (!equals.empty()) {
    qnt::expr_ptr rhs = qnt::parse_ring_expr(equals, symbols);
    qnt::normal_form<Int> nf_rhs = qnt::normalize(rhs, table);
    for (const auto& [ident, id] : symbols.ids) spelling[id] = ident;
    result["rhs_coords"] = coords_json(nf_rhs, name);
    result["equal"] = (nf == nf_rhs);
  }
  json durations;
  durations["normalize"] = t.ms();
  durations["total"] = t.ms();
  emit("normalize", params, result, durations, opts);
  return 0;
}

/* certify factor */

int cmd_certify_factor(const std::string& n_str, const std::string& fixture,
                       const std::string& live, const output_options& opts) {
  Int n(n_str);
  json params;
  params["n"] = jint(n);
  std::unique_ptr<qnt::certify_transport> transport;
  std::string source;
  if (!fixture.empty()) {
    transport = std::make_unique<qnt::fixture_transport>(fixture);
    source = "fixture";
  } else {
    std::string endpoint = live;
    if (endpoint.empty()) {
      const char* env = std::getenv("QNT_CERTIFY_ENDPOINT");
      if (env != nullptr) endpoint = env;
    }
    if (endpoint.empty())
      throw std::invalid_argument(
          "certify: no transport; pass --fixture or --live, or set "
          "QNT_CERTIFY_ENDPOINT");
    transport = std::make_unique<qnt::live_transport>(endpoint);
    source = "live";
  }
  params["source"] = source;
  timer t;
  qnt::certified_factorization_result res = qnt::certified_factorization(n, *transport);
  long ms_certify = t.ms();
  json factors = json::array();
  for (const auto& [p, e] : res.certificate.factors) {
    json f;
    f["p"] = jint(p);
    f["e"] = jint(e);
    factors.push_back(f);
  }
  json exchange;
  exchange["source"] = source;
  exchange["location"] = res.exchange.location;
  exchange["query"] = res.exchange.query;
  exchange["response"] = res.exchange.raw_response;
  json result;
  result["n"] = jint(n);
  result["factors"] = factors;
  result["exchange"] = exchange;
  /* The exact bytes a fixture file for this exchange must contain. */
  std::string pin = res.exchange.query + "\n" + res.exchange.raw_response;
  if (pin.empty() || pin.back() != '\n') pin += '\n';
  result["pin"] = pin;
  json durations;
  durations["certify"] = ms_certify;
  durations["total"] = t.ms();
  emit("certify factor", params, result, durations, opts);
  return 0;
}

/* sweep */

json sweep_row(const Int& d) {
  Int h_group = qnt::class_group(d).h;
  Int h_analytic = qnt::class_number_analytic(d);
  Int h_forms = qnt::class_number_forms_oracle(d);
  if (h_group != h_analytic || h_group != h_forms)
    throw std::logic_error("sweep: the three class number oracles disagree");
  json row;
  row["d"] = jint(d);
  row["h"] = jint(h_group);
  qnt::mordell_instance inst = qnt::check_hypotheses(d);
  row["qualifies"] = inst.qualifies();
  if (!inst.qualifies()) {
    row["outcome"] = nullptr;
    row["points"] = nullptr;
    row["solutions"] = nullptr;
    row["modulus"] = nullptr;
    return row;
  }
  qnt::mordell_result r = qnt::solve(inst);
  row["outcome"] = outcome_name(r.outcome);
  row["points"] = static_cast<long>(r.solutions.size());
  json sols = json::array();
  for (const auto& s : r.solutions) sols.push_back(solution_json(s));
  row["solutions"] = sols;
  row["modulus"] =
      r.obstruction_modulus ? jint(*r.obstruction_modulus) : json(nullptr);
  return row;
}

std::string sweep_table(const json& rows) {
  std::string out = "d\th\tpoints\tsolutions\n";
  for (const auto& row : rows) {
    out += row["d"].dump();
    out += "\t" + row["h"].dump();
    if (row["points"].is_null()) {
      out += "\t-\t-\n";
      continue;
    }
    out += "\t" + row["points"].dump() + "\t";
    if (row["solutions"].empty()) {
      out += "-\n";
      continue;
    }
    bool first = true;
    for (const auto& s : row["solutions"]) {
      if (!first) out += "; ";
      first = false;
      out += "(" + s["x"].dump() + ", " + s["y"].dump() + ")";
    }
    out += "\n";
  }
  return out;
}

int cmd_sweep(long from, long to, long jobs, const output_options& opts) {
  if (from > to) std::swap(from, to);
  if (jobs < 1) throw std::invalid_argument("sweep: --jobs must be at least 1");
  json params;
  params["from"] = from;
  params["to"] = to;
  params["jobs"] = jobs;
  timer t;
  /* Descending d, so the table starts at the d nearest zero. */
  std::vector<Int> ds;
  for (long v = std::min(to, -1L); v >= from; --v) {
    Int d(v);
    if (qnt::mod_floor(d, Int(4)) != 2 && qnt::mod_floor(d, Int(4)) != 3) continue;
    if (!qnt::squarefree(d)) continue;
    ds.push_back(d);
  }
  std::vector<json> rows(ds.size());
  if (jobs == 1) {
    for (std::size_t i = 0; i < ds.size(); ++i) rows[i] = sweep_row(ds[i]);
  } else {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
    for (long w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w]() {
        try {
          for (std::size_t i = static_cast<std::size_t>(w); i < ds.size();
               i += static_cast<std::size_t>(jobs))
            rows[i] = sweep_row(ds[i]);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  json jr = json::array();
  for (auto& row : rows) jr.push_back(std::move(row));
  json result;
  result["from"] = from;
  result["to"] = to;
  result["rows"] = jr;
  json durations;
  durations["total"] = t.ms();
  emit("sweep", params, result, durations, opts);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact arithmetic for imaginary quadratic orders: class groups,"
               " ideal arithmetic, and Mordell curves y^2 = x^3 + d"};
  app.require_subcommand(1);
  output_options opts;
  app.add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
  app.add_flag("--timings", opts.timings, "Attach durations_ms to the envelope");

  long d = 0;
  std::string method = "minkowski";
  std::vector<long> m_values;
  CLI::App* cg = app.add_subcommand("class-group", "Class group of Z[sqrt(d)]");
  cg->fallthrough();
  cg->add_option("--d", d, "Squarefree d < 0 with d = 2, 3 (mod 4)")->required();
  cg->add_option("--method", method, "Generator bound: minkowski or mset")
      ->check(CLI::IsMember({"minkowski", "mset"}))
      ->capture_default_str();
  cg->add_option("--m", m_values, "Multiplier set for --method mset")->delimiter(',');

  CLI::App* cn = app.add_subcommand("class-number", "Class number by three oracles");
  cn->fallthrough();
  cn->add_option("--d", d, "Squarefree d < 0 with d = 2, 3 (mod 4)")->required();

  bool trace = false;
  long brute_bound = 1000;
  CLI::App* mo = app.add_subcommand("mordell", "Integer points on y^2 = x^3 + d");
  mo->fallthrough();
  mo->add_option("--d", d, "Coefficient of the curve")->required();
  mo->add_flag("--trace", trace, "Attach the descent trace of each solution");
  mo->add_option("--brute-bound", brute_bound,
                 "Search bound on x when the hypotheses fail")
      ->capture_default_str();

  std::vector<std::string> gens;
  bool with_factors = false;
  CLI::App* id = app.add_subcommand("ideal", "Ideal generated by ring elements");
  id->fallthrough();
  id->add_option("--d", d, "Squarefree d < 0")->required();
  id->add_option("--gen", gens, "Generator, e.g. \"1 + sqrt(-5)\" (repeatable)")
      ->required();
  id->add_flag("--factor", with_factors, "Attach the prime factorization");

  long table_a = 0;
  long table_b = -1;
  std::string expr;
  std::string equals;
  CLI::App* no = app.add_subcommand("normalize",
                                    "Canonical form of a ring expression");
  no->fallthrough();
  no->add_option("--a", table_a, "Table parameter a in sqrt^2 = a*sqrt + b")
      ->capture_default_str();
  no->add_option("--b", table_b, "Table parameter b in sqrt^2 = a*sqrt + b")
      ->capture_default_str();
  no->add_option("--expr", expr, "Expression over + - * ^ and identifiers")
      ->required();
  no->add_option("--equals", equals, "Right hand side to compare against");

  std::string n_str;
  std::string fixture;
  std::string live;
  CLI::App* ce = app.add_subcommand("certify", "Externally certified computations");
  ce->fallthrough();
  ce->require_subcommand(1);
  CLI::App* cf = ce->add_subcommand("factor", "Certified integer factorization");
  cf->fallthrough();
  cf->add_option("--n", n_str, "Integer to factor, n >= 2")->required();
  cf->add_option("--fixture", fixture, "Replay a recorded exchange from this file");
  cf->add_option("--live", live,
                 "POST queries to this endpoint (default QNT_CERTIFY_ENDPOINT)");

  long from = 0;
  long to = -1;
  long jobs = 1;
  CLI::App* sw = app.add_subcommand("sweep", "Class numbers and Mordell solutions"
                                             " over a range of d");
  sw->fallthrough();
  sw->add_option("--from", from, "Lower end of the d range")->required();
  sw->add_option("--to", to, "Upper end of the d range")->required();
  sw->add_option("--jobs", jobs, "Worker threads; 1 keeps timing reproducible")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  try {
    if (cg->parsed()) return cmd_class_group(d, method, m_values, opts);
    if (cn->parsed()) return cmd_class_number(d, opts);
    if (mo->parsed()) return cmd_mordell(d, trace, brute_bound, opts);
    if (id->parsed()) return cmd_ideal(d, gens, with_factors, opts);
    if (no->parsed()) return cmd_normalize(table_a, table_b, expr, equals, opts);
    if (ce->parsed()) return cmd_certify_factor(n_str, fixture, live, opts);
    if (sw->parsed()) return cmd_sweep(from, to, jobs, opts);
  } catch (const qnt::hypothesis_error& e) {
    std::cerr << "qnt: hypothesis not met: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qnt: error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
