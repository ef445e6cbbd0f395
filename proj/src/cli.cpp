#include "amns/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "amns/amns.hpp"
#include "amns/error.hpp"
#include "amns/gen.hpp"
#include "amns/oracle.hpp"
#include "amns/paramfile.hpp"

namespace amns::cli {

namespace {

namespace fs = std::filesystem;

struct GenFlags {
  std::string p;
  std::uint32_t n = 0;
  std::int64_t lambda = 0;
  bool enumerate = false;
  unsigned c = 2;
  std::size_t lambda_count = 0;
  unsigned k = 64;
  unsigned delta = 0;
  std::size_t max_systems = 0;
  std::uint64_t seed = 1;
  std::string out_dir;
};

struct ConvertFlags {
  std::string params, value, beta;
  bool to_amns = false, from_amns = false;
  int method = 2;
};

struct MulFlags {
  std::string params, a, b;
};

struct RoundtripFlags {
  std::string params;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
};

struct BenchFlags {
  std::string params, baseline = "montgomery", id;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
};

struct EnumFlags {
  std::string p;
  unsigned k = 64, c = 2;
  bool list = false;
};

std::string join_signed(const Element& e) {
  std::string s;
  for (std::uint32_t i = 0; i < e.size(); ++i) {
    if (i) s += ',';
    s += to_hex(from_i64(e[i]));
  }
  return s;
}

Arith make_arith(const ParamFile& pf) {
  PrecompTables tables = pf.tables ? *pf.tables : gen::precompute_tables(pf.system);
  return Arith(pf.system, std::move(tables));
}

Wideint residue_arg(const std::string& text, const Wideint& p, const char* what) {
  const Wideint v = parse_int(text);
  if (sgn(v) < 0 || v >= p) throw Error(Errc::precondition, std::string(what) + " must lie in [0, p)");
  return v;
}

std::string lambda_tag(std::int64_t lambda) {
  return lambda < 0 ? "m" + std::to_string(-lambda) : "p" + std::to_string(lambda);
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case Errc::parse: return kParseError;
    case Errc::precondition:
    case Errc::contract:
    case Errc::unsupported: return kInputError;
    default: return kFailure;
  }
}

int cmd_gen(const GenFlags& f, std::ostream& out, std::ostream& err) {
  if (f.n < 2) throw Error(Errc::precondition, "n must be at least 2");
  const Wideint p = parse_int(f.p);
  gen::GenOptions opts;
  opts.seed = f.seed;
  opts.max_systems = f.max_systems;

  std::vector<std::pair<std::int64_t, gen::LambdaShape>> lambdas;
  if (f.enumerate) {
    const auto en = gen::enumerate_lambda({f.k, f.c}, p);
    for (const auto& cand : en.values) {
      if (f.lambda_count && lambdas.size() >= f.lambda_count) break;
      lambdas.emplace_back(cand.value, cand.shape);
    }
    if (f.out_dir.empty()) throw Error(Errc::precondition, "--enumerate needs --out");
  } else {
    if (f.lambda == 0) throw Error(Errc::precondition, "give --lambda or --enumerate");
    lambdas.emplace_back(f.lambda, gen::LambdaShape::two_term);
  }
  if (!f.out_dir.empty()) fs::create_directories(f.out_dir);

  std::ofstream manifest;
  if (f.enumerate) {
    manifest.open(fs::path(f.out_dir) / "manifest.tsv", std::ios::trunc);
    manifest << "file\tlambda\tshape\tstatus\n";
  }

  std::size_t written = 0;
  for (const auto& [lambda, shape] : lambdas) {
    std::vector<gen::GeneratedSystem> systems;
    try {
      systems = gen::generate(p, f.n, lambda, f.k, f.delta, opts);
    } catch (const Error& e) {
      err << "lambda " << lambda << ": " << e.what() << '\n';
      if (f.enumerate) manifest << "-\t" << lambda << '\t' << gen::to_string(shape) << '\t' << to_string(e.code()) << '\n';
      if (!f.enumerate) return exit_for(e);
      continue;
    }
    for (std::size_t i = 0; i < systems.size(); ++i) {
      ParamFile pf{systems[i].system, systems[i].tables};
      if (f.out_dir.empty()) {
        out << pf.to_string() << '\n';
      } else {
        const std::string name = "amns_n" + std::to_string(f.n) + "_l" + lambda_tag(lambda) + "_" + std::to_string(i) + ".params";
        pf.save((fs::path(f.out_dir) / name).string());
        out << name << '\n';
        if (f.enumerate) manifest << name << '\t' << lambda << '\t' << gen::to_string(shape) << "\tok\n";
      }
      ++written;
    }
  }
  if (f.enumerate) out << "systems written: " << written << '\n';
  return written > 0 ? kOk : kFailure;
}

int cmd_verify(const std::string& path, std::ostream& out) {
  const ParamFile pf = ParamFile::load(path);
  const auto report = gen::verify_system(pf.system, pf.tables ? &*pf.tables : nullptr);
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << "  " << c.detail;
    out << '\n';
  }
  out << "result: " << (report.all_passed() ? "pass" : "fail") << '\n';
  return report.all_passed() ? kOk : kFailure;
}

Element parse_element(const std::string& text, const Arith& arith) {
  poly::IntPoly coeffs;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) coeffs.push_back(parse_int(item));
  if (coeffs.size() != arith.system().n)
    throw Error(Errc::precondition, "element needs exactly n comma-separated coefficients");
  return Element::from_poly(coeffs, arith.system().n);
}

int cmd_convert(const ConvertFlags& f, std::ostream& out) {
  if (f.to_amns == f.from_amns) throw Error(Errc::precondition, "choose exactly one of --to-amns / --from-amns");
  if (f.method != 1 && f.method != 2) throw Error(Errc::precondition, "--method must be 1 or 2");
  const ParamFile pf = ParamFile::load(f.params);
  const Arith arith = make_arith(pf);
  const Wideint& p = pf.system.p;
  if (f.to_amns) {
    const Wideint a = residue_arg(f.value, p, "value");
    Element e;
    if (!f.beta.empty())
      e = arith.dpa_to_amns(a, residue_arg(f.beta, p, "beta"));
    else
      e = f.method == 1 ? arith.to_amns_m1(a) : arith.to_amns_m2(a);
    out << "amns = " << join_signed(e) << '\n';
    out << "eval = " << to_hex(arith.evaluate(e)) << '\n';
  } else {
    const Element e = parse_element(f.value, arith);
    Wideint a;
    if (!f.beta.empty())
      a = arith.dpa_from_amns(e, residue_arg(f.beta, p, "beta"));
    else
      a = f.method == 1 ? arith.from_amns_horner(e) : arith.from_amns_powers(e);
    out << "value = " << to_hex(a) << '\n';
  }
  return kOk;
}

int cmd_mul(const MulFlags& f, std::ostream& out) {
  const ParamFile pf = ParamFile::load(f.params);
  const Arith arith = make_arith(pf);
  const Wideint a = residue_arg(f.a, pf.system.p, "a");
  const Wideint b = residue_arg(f.b, pf.system.p, "b");
  const Element c = arith.mul(arith.to_amns_m2(a), arith.to_amns_m2(b));
  out << "amns = " << join_signed(c) << '\n';
  out << "value = " << to_hex(arith.from_amns_horner(c)) << '\n';
  return kOk;
}

int cmd_roundtrip(const RoundtripFlags& f, std::ostream& out, std::ostream& err) {
  const ParamFile pf = ParamFile::load(f.params);
  const Arith arith = make_arith(pf);
  const Wideint& p = pf.system.p;
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(static_cast<unsigned long>(f.seed));
  std::uint64_t failures = 0;
  for (std::uint64_t t = 0; t < f.trials; ++t) {
    const Wideint a = rng.get_z_range(p), b = rng.get_z_range(p);
    const Element ea = arith.to_amns_m2(a), eb = arith.to_amns_m2(b);
    const Element ea1 = arith.to_amns_m1(a);
    const Element prod = arith.mul(ea, eb);
    const Wideint ab = mod_floor(a * b, p);
    const bool ok = arith.from_amns_horner(ea) == a && arith.from_amns_powers(ea1) == a &&
                    arith.evaluate(ea) == arith.evaluate(ea1) && arith.from_amns_horner(prod) == ab &&
                    arith.from_amns_powers(prod) == ab && prod.norm_inf() < arith.rho();
    if (!ok) {
      if (failures < 5) err << "mismatch at trial " << t << ": a=" << to_hex(a) << " b=" << to_hex(b) << '\n';
      ++failures;
    }
  }
  out << "trials = " << f.trials << '\n' << "failures = " << failures << '\n';
  return failures == 0 ? kOk : kFailure;
}

int cmd_bench(const BenchFlags& f, std::ostream& out) {
  const ParamFile pf = ParamFile::load(f.params);
  const Arith arith(pf.system);
  const std::string id = f.id.empty() ? fs::path(f.params).stem().string() : f.id;
  const auto rep = oracle::bench_ratio(arith, f.trials, oracle::parse_baseline(f.baseline), id, f.seed);
  out << oracle::format_bench_header() << oracle::format_bench_row(rep);
  return kOk;
}

int cmd_enumerate(const EnumFlags& f, std::ostream& out) {
  const auto en = gen::enumerate_lambda({f.k, f.c}, parse_int(f.p));
  out << std::fixed << std::setprecision(4) << "omega = " << en.omega << '\n'
      << "width = " << en.width << '\n'
      << "nominal_count = " << en.nominal_count << '\n'
      << "distinct_count = " << en.values.size() << '\n';
  if (f.list)
    for (const auto& v : en.values) out << v.value << '\t' << gen::to_string(v.shape) << '\n';
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"AMNS parameter generation and arithmetic"};
  app.require_subcommand(1);

  GenFlags gf;
  auto* gen_cmd = app.add_subcommand("gen", "generate AMNS parameter sets");
  gen_cmd->add_option("--p", gf.p, "prime modulus (hex or decimal)")->required();
  gen_cmd->add_option("--n", gf.n, "polynomial degree bound")->required();
  auto* lam = gen_cmd->add_option("--lambda", gf.lambda, "E = X^n - lambda");
  auto* en = gen_cmd->add_flag("--enumerate", gf.enumerate, "sweep the enumerated lambda values");
  lam->excludes(en);
  gen_cmd->add_option("--c", gf.c, "limb allowance for the lambda sweep");
  gen_cmd->add_option("--lambda-count", gf.lambda_count, "only the first N enumerated values");
  gen_cmd->add_option("--k", gf.k, "phi = 2^k");
  gen_cmd->add_option("--delta", gf.delta, "addition budget");
  gen_cmd->add_option("--max-systems", gf.max_systems, "per lambda, 0 = all");
  gen_cmd->add_option("--seed", gf.seed);
  gen_cmd->add_option("--out", gf.out_dir, "output directory");

  std::string verify_path;
  auto* verify_cmd = app.add_subcommand("verify", "check every invariant of a parameter file");
  verify_cmd->add_option("--params,params", verify_path)->required();

  ConvertFlags cf;
  auto* convert_cmd = app.add_subcommand("convert", "convert to or from the AMNS");
  convert_cmd->add_option("--params", cf.params)->required();
  convert_cmd->add_option("--value", cf.value, "residue, or comma-separated coefficients with --from-amns")->required();
  convert_cmd->add_flag("--to-amns", cf.to_amns);
  convert_cmd->add_flag("--from-amns", cf.from_amns);
  convert_cmd->add_option("--method", cf.method, "1 or 2");
  convert_cmd->add_option("--beta", cf.beta, "DPA mask");

  MulFlags mf;
  auto* mul_cmd = app.add_subcommand("mul", "multiply two residues through the AMNS");
  mul_cmd->add_option("--params", mf.params)->required();
  mul_cmd->add_option("--a", mf.a)->required();
  mul_cmd->add_option("--b", mf.b)->required();

  RoundtripFlags rf;
  auto* rt_cmd = app.add_subcommand("roundtrip", "random conversion and multiplication checks");
  rt_cmd->add_option("--params", rf.params)->required();
  rt_cmd->add_option("--trials", rf.trials);
  rt_cmd->add_option("--seed", rf.seed);

  BenchFlags bf;
  auto* bench_cmd = app.add_subcommand("bench", "time multiplication against a baseline");
  bench_cmd->add_option("--params", bf.params)->required();
  bench_cmd->add_option("--trials", bf.trials);
  bench_cmd->add_option("--baseline", bf.baseline, "montgomery, naive or self");
  bench_cmd->add_option("--id", bf.id, "system_id column");
  bench_cmd->add_option("--seed", bf.seed);

  EnumFlags ef;
  auto* enum_cmd = app.add_subcommand("enumerate", "print Omega and the lambda candidates");
  enum_cmd->add_option("--p", ef.p)->required();
  enum_cmd->add_option("--k", ef.k);
  enum_cmd->add_option("--c", ef.c);
  enum_cmd->add_flag("--list", ef.list, "print every value");

  std::vector<std::string> argv_store{"amns"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*gen_cmd) return cmd_gen(gf, out, err);
    if (*verify_cmd) return cmd_verify(verify_path, out);
    if (*convert_cmd) return cmd_convert(cf, out);
    if (*mul_cmd) return cmd_mul(mf, out);
    if (*rt_cmd) return cmd_roundtrip(rf, out, err);
    if (*bench_cmd) return cmd_bench(bf, out);
    if (*enum_cmd) return cmd_enumerate(ef, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kInputError;
}

}  // namespace amns::cli
