// hsum: command-line front end for the harmonic-sum library.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hsum/hsum.hpp"

namespace {

using namespace hsum;

enum ExitCode { kOk = 0, kInternal = 1, kUsage = 2, kCapability = 3, kResource = 4, kPole = 5 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::usage: return kUsage;
    case ErrorKind::capability: return kCapability;
    case ErrorKind::resource: return kResource;
    case ErrorKind::pole: return kPole;
  }
  return kInternal;
}

struct Options {
  unsigned weight = 6;
  bool no_minus_one = false;
  bool lyndon = false;
  std::string index;
  std::string n = "0";
  std::string z;
  std::string fn;
  std::string mode = "exact";
  std::string method = "series";
  std::string a, b;
  unsigned verify_n = 0;
  bool json = false;
  int precision = 16;
  unsigned jobs = 1;
  bool derivative = false;
  bool allow_weight6 = false;
  bool continuable_only = false;
};

void emit(const Options& o, const std::string& kind, const Json& payload, const std::string& text) {
  if (o.json)
    std::cout << envelope(kind, payload).dump(2) << "\n";
  else
    std::cout << text;
}

/// "7" or "3..12".
std::pair<unsigned, unsigned> parse_range(const std::string& s) {
  auto number = [&s](const std::string& t) {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("--n expects a nonnegative integer or a range a..b, got '" + s + "'");
    return static_cast<unsigned>(std::stoul(t));
  };
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const unsigned v = number(s);
    return {v, v};
  }
  const unsigned lo = number(s.substr(0, dots)), hi = number(s.substr(dots + 2));
  if (lo > hi) throw UsageError("empty --n range '" + s + "'");
  return {lo, hi};
}

IndexVector require_index(const std::string& s, const char* flag) {
  if (s.empty()) throw UsageError(std::string(flag) + " is required");
  return IndexVector::parse(s);
}

// --- table --------------------------------------------------------------------

std::string table_text(const std::vector<ReductionRow>& rows) {
  std::ostringstream out;
  auto line = [&](const char* head, auto field) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%-4s", head);
    out << buf;
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "%6llu", static_cast<unsigned long long>(field(r)));
      out << buf;
    }
    out << "\n";
  };
  line("w", [](const ReductionRow& r) { return std::uint64_t(r.weight); });
  line("#c", [](const ReductionRow& r) { return r.sums; });
  line("#r", [](const ReductionRow& r) { return r.basis; });
  return out.str();
}

int cmd_table(const Options& o) {
  if (o.weight < 1 || o.weight > kMaxEnumerationWeight)
    throw UsageError("--weight must lie in 1.." + std::to_string(kMaxEnumerationWeight));
  Json payload;
  std::string text;
  if (!o.no_minus_one) {
    const auto full = reduction_table(o.weight, true);
    payload["full"] = to_json(full);
    text += "full alphabet\n" + table_text(full);
  }
  const auto restricted = reduction_table(o.weight, false);
  payload["no_minus_one"] = to_json(restricted);
  const auto w1 = count_basis_no_minus_one(1);
  payload["w1_basis_special_case"] = {{"value", w1.value}, {"formula_value", w1.raw}};
  if (!o.no_minus_one) text += "\n";
  text += "alphabet without -1\n" + table_text(restricted);
  text += "note: the Moebius basis formula gives " + std::to_string(w1.raw) +
          " at w=1; the count is special-cased to " + std::to_string(w1.value) + "\n";
  emit(o, "table", payload, text);
  return kOk;
}

// --- enumerate / count ----------------------------------------------------

int cmd_enumerate(const Options& o) {
  const bool allow = !o.no_minus_one;
  const auto list = o.lyndon ? lyndon_words(o.weight, allow) : enumerate_sums(o.weight, allow);
  std::string text;
  for (const auto& v : list) text += v.str() + "\n";
  emit(o, o.lyndon ? "lyndon_words" : "index_list", to_json(list), text);
  return kOk;
}

int cmd_count(const Options& o) {
  detail::check_weight_bound(o.weight);
  const unsigned w = o.weight;
  const auto basis = count_basis_no_minus_one(w);
  Json p;
  p["weight"] = w;
  p["sums"] = count_total(w);
  p["sums_no_minus_one"] = count_no_minus_one(w);
  p["lyndon"] = lyndon_words(w, true).size();
  p["lyndon_no_minus_one"] = lyndon_words(w, false).size();
  p["basis_formula_no_minus_one"] = {
      {"value", basis.value}, {"formula_value", basis.raw}, {"special_cased", basis.special_cased}};
  std::ostringstream t;
  t << "weight                 " << w << "\n"
    << "sums                   " << count_total(w) << "\n"
    << "sums without -1        " << count_no_minus_one(w) << "\n"
    << "lyndon words           " << lyndon_words(w, true).size() << "\n"
    << "lyndon words without -1 " << lyndon_words(w, false).size() << "\n"
    << "basis formula          " << basis.value;
  if (basis.special_cased) t << " (special-cased; formula gives " << basis.raw << ")";
  t << "\n";
  emit(o, "count", p, t.str());
  return kOk;
}

// --- eval -------------------------------------------------------------------

template <class F>
void parallel_for(unsigned count, unsigned jobs, F&& body) {
  jobs = std::max(1u, std::min(jobs, count));
  if (jobs == 1) {
    for (unsigned i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<unsigned> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (unsigned i; (i = next++) < count;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

int cmd_eval(const Options& o) {
  const IndexVector v = require_index(o.index, "--index");
  const auto [lo, hi] = parse_range(o.n);
  const unsigned count = hi - lo + 1;
  if (o.mode != "exact" && o.mode != "float" && o.mode != "oracle")
    throw UsageError("--mode must be exact, float or oracle");
  std::vector<Json> values(count);
  std::vector<std::string> lines(count);
  SumCache cache;
  const unsigned bits = o.precision <= 15 ? 53 : 64;
  parallel_for(count, o.jobs, [&](unsigned i) {
    const unsigned n = lo + i;
    if (o.mode == "float") {
      if (n == 0) {
        values[i] = real_to_json(0, o.precision, 0);
        lines[i] = "0";
        return;
      }
      const auto r = eval_float(v, n, bits);
      const int digits = std::min(o.precision, r.precision_bits <= 53 ? 17 : 21);
      values[i] = real_to_json(r.value, digits, r.error_bound);
      values[i]["precision_bits"] = r.precision_bits;
      lines[i] = format_real(r.value, digits) + "  (error <= " + format_real(r.error_bound, 3) + ")";
    } else {
      const Rational r = o.mode == "exact" ? eval_exact(v, n, EvalOptions{}, &cache) : eval_oracle(v, n);
      values[i] = to_string(r);
      lines[i] = to_string(r);
    }
  });
  Json p;
  p["index"] = v.str();
  p["mode"] = o.mode;
  Json arr = Json::array();
  std::string text;
  for (unsigned i = 0; i < count; ++i) {
    arr.push_back({{"n", lo + i}, {"value", values[i]}});
    text += count == 1 ? lines[i] + "\n" : std::to_string(lo + i) + "  " + lines[i] + "\n";
  }
  p["values"] = std::move(arr);
  emit(o, "eval", p, text);
  return kOk;
}

// --- algebra ------------------------------------------------------------------

/// Checks lhs(N) == expr(N) for N = 1..upto exactly.
template <class Lhs>
void verify(const HarmonicExpr& e, unsigned upto, Lhs lhs) {
  SumCache cache;
  for (unsigned n = 1; n <= upto; ++n)
    if (lhs(n, cache) != eval_exact(e, n, &cache))
      throw std::logic_error("identity check failed at N = " + std::to_string(n));
}

int cmd_product(const Options& o) {
  const IndexVector a = require_index(o.a, "--a"), b = require_index(o.b, "--b");
  const HarmonicExpr e = stuffle_product(a, b);
  if (o.verify_n)
    verify(e, o.verify_n, [&](unsigned n, SumCache& c) {
      return Rational(eval_exact(a, n, {}, &c) * eval_exact(b, n, {}, &c));
    });
  Json p;
  p["a"] = a.str();
  p["b"] = b.str();
  p["expression"] = to_json(e);
  std::string text = "S[" + a.str() + "]*S[" + b.str() + "] = " + e.str() + "\n";
  if (o.verify_n) {
    p["verified"] = {{"exact", true}, {"n_max", o.verify_n}};
    text += "verified: exact, N=1.." + std::to_string(o.verify_n) + "\n";
  }
  emit(o, "product", p, text);
  return kOk;
}

int cmd_reduce(const Options& o) {
  const IndexVector v = require_index(o.index, "--index");
  ReduceOptions ro;
  ro.allow_weight6 = o.allow_weight6;
  const HarmonicExpr e = reduce_to_basis(v, ro);
  if (o.verify_n)
    verify(e, o.verify_n, [&](unsigned n, SumCache& c) { return eval_exact(v, n, {}, &c); });
  Json p;
  p["index"] = v.str();
  p["expression"] = to_json(e);
  std::string text = "S[" + v.str() + "] = " + e.str() + "\n";
  if (o.verify_n) {
    p["verified"] = {{"exact", true}, {"n_max", o.verify_n}};
    text += "verified: exact, N=1.." + std::to_string(o.verify_n) + "\n";
  }
  emit(o, "reduce", p, text);
  return kOk;
}

// --- continuation ---------------------------------------------------------

int cmd_continue(const Options& o) {
  if (o.fn.empty()) throw UsageError("--fn is required");
  if (o.z.empty()) throw UsageError("--z is required");
  const ComplexValue z = parse_complex(o.z);
  const BasicFunction& f = require_continuable(o.fn);
  Json p;
  p["fn"] = f.id;
  p["designation"] = f.designation;
  p["z"] = complex_to_json(z, 17);
  std::string text;
  const std::string label = o.derivative ? "d/dz M[" + f.designation + "]" : "M[" + f.designation + "]";
  if (o.method == "series") {
    const auto r = evaluate_jet(f.id, z, o.derivative ? 1 : 0);
    const ComplexValue value = o.derivative ? r.jet[1] : r.jet[0];
    p["method"] = "series";
    p["derivative"] = o.derivative;
    p["value"] = complex_to_json(value, o.precision);
    p["shifts"] = r.shifts;
    p["degraded_accuracy"] = r.degraded_accuracy;
    text = label + "(" + format_complex(z, 10) + ") = " + format_complex(value, o.precision) + "\n";
    if (r.degraded_accuracy)
      std::cerr << "warning: z lies within " << ContinuationConfig{}.near_pole_distance
                << " of a pole; accuracy degraded\n";
  } else if (o.method == "quadrature") {
    if (o.derivative) throw CapabilityError("derivatives are available with --method series only");
    const auto q = mellin_numeric(f.id, z);
    p["method"] = "quadrature";
    p["value"] = complex_to_json(q.value, o.precision, q.error_estimate);
    text = label + "(" + format_complex(z, 10) + ") = " + format_complex(q.value, o.precision) +
           "  (error <= " + format_real(q.error_estimate, 3) + ")\n";
  } else {
    throw UsageError("--method must be series or quadrature");
  }
  emit(o, "continue", p, text);
  return kOk;
}

int cmd_limit(const Options& o) {
  const IndexVector v = require_index(o.index, "--index");
  const LimitResult r = limit_value(v);
  const int digits = std::min(o.precision, 18);
  Json p = to_json(r, digits);
  p["index"] = v.str();
  const std::string text = r.finite() ? format_real(r.value, digits) + "  (error estimate " +
                                            format_real(r.error_estimate, 3) + ")\n"
                                      : std::string("divergent\n");
  emit(o, "limit", p, text);
  return kOk;
}

int cmd_registry(const Options& o) {
  RegistryFilter filter;
  if (o.continuable_only) filter.support = Support::continuable;
  Json arr = Json::array();
  std::string text;
  for (const auto& f : registry_list(filter)) {
    arr.push_back(to_json(f));
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-4s w=%u  %-32s %s\n", f.id.c_str(), f.weight, f.designation.c_str(),
                  to_string(f.support));
    text += buf;
  }
  Json p;
  p["functions"] = std::move(arr);
  Json tags = Json::array();
  for (const auto& c : physics_class_counts()) tags.push_back({{"quantity", c.quantity}, {"count", c.count}});
  p["class_counts"] = std::move(tags);
  emit(o, "registry", p, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nested harmonic sums: evaluation, algebra and analytic continuation"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* c) {
    c->add_flag("--json", o.json, "Machine-readable output");
    c->add_option("--precision", o.precision, "Significant digits of printed floats")->check(CLI::Range(1, 21));
  };
  auto weighted = [&o](CLI::App* c) {
    c->add_option("--weight", o.weight, "Weight w");
    c->add_flag("--no-minus-one", o.no_minus_one, "Exclude the index -1");
  };

  auto* table = app.add_subcommand("table", "Cumulative reduction tables up to --weight");
  weighted(table);
  common(table);
  auto* enumerate = app.add_subcommand("enumerate", "List the sums of weight --weight");
  weighted(enumerate);
  enumerate->add_flag("--lyndon", o.lyndon, "Only Lyndon words");
  common(enumerate);
  auto* count = app.add_subcommand("count", "Counting formulas at weight --weight");
  count->add_option("--weight", o.weight, "Weight w");
  common(count);

  auto* eval = app.add_subcommand("eval", "Evaluate S_index(N)");
  eval->add_option("--index", o.index, "Index vector, e.g. 2,-1,1");
  eval->add_option("--n", o.n, "N or a range a..b");
  eval->add_option("--mode", o.mode, "exact | float | oracle");
  eval->add_option("--jobs", o.jobs, "Worker threads for N ranges")->check(CLI::Range(1u, 256u));
  common(eval);

  auto* product = app.add_subcommand("product", "Quasi-shuffle product S_a * S_b");
  product->add_option("--a", o.a, "First index vector");
  product->add_option("--b", o.b, "Second index vector");
  product->add_option("--verify-n", o.verify_n, "Check exactly at N = 1..K");
  common(product);

  auto* reduce = app.add_subcommand("reduce", "Express S_index through Lyndon-word sums");
  reduce->add_option("--index", o.index, "Index vector");
  reduce->add_option("--verify-n", o.verify_n, "Check exactly at N = 1..K");
  reduce->add_flag("--allow-weight6", o.allow_weight6, "Permit the slow weight-6 reduction");
  common(reduce);

  auto* cont = app.add_subcommand("continue", "Mellin transform of a basic function at complex z");
  cont->add_option("--fn", o.fn, "Function id (see registry)");
  cont->add_option("--z", o.z, "Complex argument a+bi");
  cont->add_option("--method", o.method, "series | quadrature");
  cont->add_flag("--derivative", o.derivative, "First derivative in z");
  common(cont);

  auto* limit = app.add_subcommand("limit", "N -> infinity limit of S_index(N)");
  limit->add_option("--index", o.index, "Index vector");
  common(limit);

  auto* reg = app.add_subcommand("registry", "Catalog of basic functions");
  reg->add_flag("--continuable", o.continuable_only, "Only functions with continuation support");
  common(reg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    if (name == "table") return cmd_table(o);
    if (name == "enumerate") return cmd_enumerate(o);
    if (name == "count") return cmd_count(o);
    if (name == "eval") return cmd_eval(o);
    if (name == "product") return cmd_product(o);
    if (name == "reduce") return cmd_reduce(o);
    if (name == "continue") return cmd_continue(o);
    if (name == "limit") return cmd_limit(o);
    if (name == "registry") return cmd_registry(o);
  } catch (const Error& e) {
    if (o.json) {
      Json j;
      j["schema"] = kSchema;
      j["kind"] = "error";
      j["status"] = to_string(e.kind());
      j["message"] = e.what();
      std::cout << j.dump(2) << "\n";
    }
    std::cerr << "hsum: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "hsum: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
