#include "tlsf/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tlsf/emit.hpp"
#include "tlsf/eval.hpp"
#include "tlsf/ltl.hpp"
#include "tlsf/parser.hpp"
#include "tlsf/reduce.hpp"
#include "tlsf/semantics.hpp"
#include "tlsf/typecheck.hpp"

namespace tlsf {

namespace {

[[noreturn]] void usage(const std::string& message) {
  throw Error(ErrorKind::Usage, {}, message);
}

std::pair<std::string, Nat> parse_param(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) usage("expected NAME=NAT, got '" + text + "'");
  std::string name = text.substr(0, eq);
  std::string digits = text.substr(eq + 1);
  Nat value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
    usage("value of parameter '" + name + "' is not a natural number: '" + digits + "'");
  }
  return {name, value};
}

Semantics parse_semantics(const std::string& s) {
  if (s == "mealy") return Semantics::Mealy;
  if (s == "moore") return Semantics::Moore;
  if (s == "mealy-strict") return Semantics::MealyStrict;
  if (s == "moore-strict") return Semantics::MooreStrict;
  usage("unknown semantics '" + s + "'");
}

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::Usage, {}, "cannot open '" + path + "'");
  ss << file.rdbuf();
  return ss.str();
}

std::string check_report(const Spec& spec, const std::map<std::string, Nat>& params) {
  TypeEnv types = check_spec(spec);
  std::ostringstream os;
  run_with_large_stack([&] {
    Env env(spec, params);
    os << "parameters:\n";
    for (const auto& p : spec.parameters) {
      os << "  " << p.name.text << " = " << env.lookup(p.name).as_nat() << "\n";
    }
    auto signals = [&](const char* title, const std::vector<SignalDecl>& decls) {
      os << title << ":\n";
      for (const auto& d : decls) {
        Value v = env.lookup(d.name);
        if (v.is(Value::Kind::Bus)) {
          os << "  " << d.name.text << "[" << v.width() << "]:";
          for (Nat i = 0; i < v.width(); ++i) os << " " << bus_bit_name(d.name.text, i);
          os << "\n";
        } else {
          os << "  " << d.name.text << "\n";
        }
      }
    };
    signals("inputs", spec.inputs);
    signals("outputs", spec.outputs);
  });
  if (!types.instantiations.empty()) {
    os << "functions:\n";
    for (const auto& sig : types.instantiations) {
      os << "  " << sig.name << "(";
      for (std::size_t i = 0; i < sig.args.size(); ++i) {
        os << (i ? ", " : "") << to_string(sig.args[i]);
      }
      os << ") : " << to_string(sig.result) << "\n";
    }
  }
  return os.str();
}

}  // namespace

const std::vector<std::string>& transform_names() {
  static const std::vector<std::string> names = {"nnf",       "expand-derived", "push-next",
                                                 "pull-next", "push-globally",  "push-eventually"};
  return names;
}

Formula apply_transform(const std::string& name, const Formula& f) {
  if (name == "nnf") return to_nnf(f);
  if (name == "expand-derived") return expand_derived(f);
  if (name == "push-next") return push_next(f);
  if (name == "pull-next") return pull_next(f);
  if (name == "push-globally") return push_globally(f);
  if (name == "push-eventually") return push_eventually(f);
  usage("unknown transformation '" + name + "'");
}

std::optional<CliConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  CliConfig cfg;
  CLI::App app{"Reduce TLSF specifications to the basic format or to plain LTL", "tlsf"};
  std::vector<std::string> params;
  std::string target, semantics, output = "basic";
  app.add_option("input", cfg.input, "Specification file, '-' for stdin");
  app.add_option("-p,--param", params, "Override a parameter, NAME=NAT (repeatable)")
      ->take_all();
  app.add_option("--target", target, "Target model")->check(CLI::IsMember({"mealy", "moore"}));
  app.add_option("--semantics", semantics, "Semantics")
      ->check(CLI::IsMember({"mealy", "moore", "mealy-strict", "moore-strict"}));
  app.add_option("-o,--output-mode", output, "basic or formula")
      ->check(CLI::IsMember({"basic", "formula"}));
  app.add_option("-t,--transform", cfg.transforms, "Formula transformation (repeatable, ordered)")
      ->check(CLI::IsMember(transform_names()))
      ->take_all();
  app.add_option("--profile", cfg.profile, "LTL spelling profile")
      ->check(CLI::IsMember({"tlsf", "classic"}));
  app.add_flag("--check", cfg.check, "Only type check; print parameters and signals");
  app.add_option("-O", cfg.output_path, "Write output to FILE");
  app.add_flag("-v", cfg.verbose, "Verbose diagnostics");

  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    usage(e.what());
  }
  for (const auto& p : params) {
    auto [name, value] = parse_param(p);
    cfg.params[name] = value;
  }
  if (!target.empty()) cfg.target = target == "mealy" ? Target::Mealy : Target::Moore;
  if (!semantics.empty()) cfg.semantics = parse_semantics(semantics);
  cfg.output = output == "formula" ? CliConfig::Output::Formula : CliConfig::Output::Basic;
  return cfg;
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err, std::istream& in) {
  const std::string file = config.input == "-" ? "<stdin>" : config.input;
  auto trace = [&](const std::string& msg) {
    if (config.verbose) err << "tlsf: " << msg << "\n";
  };
  try {
    std::string source = read_input(config.input, in);
    Spec spec = parse_spec(source);
    trace("parsed " + std::to_string(spec.parameters.size()) + " parameter(s), " +
          std::to_string(spec.definitions.size()) + " definition(s)");

    std::string text;
    if (config.check) {
      for (const auto& [name, value] : config.params) {
        bool known = false;
        for (const auto& p : spec.parameters) known = known || p.name.text == name;
        if (!known) usage("'" + name + "' is not a parameter of this specification");
      }
      text = check_report(spec, config.params);
    } else {
      BasicSpec basic = elaborate(spec, config.params);
      trace("elaborated to " + std::to_string(basic.inputs.size()) + " input(s), " +
            std::to_string(basic.outputs.size()) + " output(s)");
      if (config.semantics) basic.info.semantics = *config.semantics;
      if (config.target) basic.info.target = *config.target;
      if (config.output == CliConfig::Output::Basic) {
        if (!config.transforms.empty()) usage("transformations need --output-mode formula");
        text = print_basic(basic);
      } else {
        LtlProfile profile = LtlProfile::named(config.profile);
        Formula f;
        run_with_large_stack([&] {
          f = interpret(basic);
          for (const auto& t : config.transforms) {
            f = apply_transform(t, f);
            trace("applied " + t);
          }
          text = print_formula(f, profile) + "\n";
        });
      }
    }

    if (config.output_path.empty()) {
      out << text;
    } else {
      std::ofstream file_out(config.output_path, std::ios::binary);
      if (!file_out) usage("cannot write '" + config.output_path + "'");
      file_out << text;
    }
    return 0;
  } catch (const Error& e) {
    err << (e.kind() == ErrorKind::Usage ? "tlsf" : file);
    if (e.pos().valid()) err << ":" << e.pos().line << ":" << e.pos().column;
    err << ": error: " << e.message() << "\n";
    if (config.verbose) err << "tlsf: (" << to_string(e.kind()) << " error)\n";
    return e.kind() == ErrorKind::Usage ? 2 : 1;
  }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
             std::istream& in) {
  std::optional<CliConfig> cfg;
  try {
    cfg = parse_args(argc, argv, out);
  } catch (const Error& e) {
    err << "tlsf: error: " << e.message() << "\n";
    return 2;
  }
  if (!cfg) return 0;
  return run(*cfg, out, err, in);
}

}  // namespace tlsf
