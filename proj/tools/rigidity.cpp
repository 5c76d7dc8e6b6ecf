// rigidity: seeded experiments and graph file utilities.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rigidity/error.hpp"
#include "rigidity/experiments.hpp"
#include "rigidity/io.hpp"

using namespace rigidity;

namespace {

// "3", "5/2" or an exact decimal such as "2.5"
Rational cli_rational(const std::string& text, const std::string& option) {
  try {
    const auto dot = text.find('.');
    if (dot == std::string::npos) return parse_rational(text);
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos)
      fail(ErrorKind::parse, "bad decimal");
    const bool negative = !whole.empty() && whole[0] == '-';
    Rational r = parse_rational(whole.empty() || whole == "-" ? "0" : whole);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Rational f(BigInt(frac), scale);
    f.canonicalize();
    return negative ? Rational(r - f) : Rational(r + f);
  } catch (const Error&) {
    fail(ErrorKind::usage, option + ": expected an integer, p/q or decimal, got \"" + text + "\"");
  }
}

// Removes --cap.<name>=V / --cap.<name> V from argv.
std::map<std::string, std::uint64_t> take_caps(std::vector<std::string>& args) {
  std::map<std::string, std::uint64_t> caps;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--cap.", 0) != 0) {
      rest.push_back(a);
      continue;
    }
    std::string name = a.substr(6), value;
    if (const auto eq = name.find('='); eq != std::string::npos) {
      value = name.substr(eq + 1);
      name = name.substr(0, eq);
    } else {
      if (i + 1 >= args.size()) fail(ErrorKind::usage, a + " needs a value");
      value = args[++i];
    }
    if (name.empty()) fail(ErrorKind::usage, "empty cap name");
    if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos)
      fail(ErrorKind::usage, "--cap." + name + ": expected a non-negative integer");
    caps[name] = std::stoull(value);
  }
  args = std::move(rest);
  return caps;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto caps = take_caps(args);

  CLI::App app{"Reconstructibility experiments for random graphs on the line", "rigidity"};
  app.require_subcommand(0, 1);
  std::string config_file, out;
  std::uint64_t threads = 0;
  app.add_option("--config", config_file, "Replay a config or a run summary");
  app.add_option("--out", out, "CSV output path (summary written beside it)");
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");

  struct Opts {
    std::string n, lambda, beta, c, ca, d, s, ambient, trials, seed;
  } o;
  std::vector<CLI::App*> experiments;
  for (const auto& name : experiment_names()) {
    auto* sub = app.add_subcommand(name, "Run the " + name + " experiment");
    sub->add_option("--n", o.n, "Vertex / ambient count");
    sub->add_option("--lambda", o.lambda, "Average degree (rational)");
    sub->add_option("--beta", o.beta, "Event D parameter in (0,1)");
    sub->add_option("--c", o.c, "Expansion size fraction in (0,1)");
    sub->add_option("--ca", o.ca, "S4 prefix constant");
    sub->add_option("--d", o.d, "Regular degree");
    sub->add_option("--s", o.s, "Path length");
    sub->add_option("--ambient", o.ambient, "claim34 ambient set: generic or grid");
    sub->add_option("--trials", o.trials, "Number of trials");
    sub->add_option("--seed", o.seed, "Master seed");
    sub->add_option("--out", out, "CSV output path");
    sub->add_option("--threads", threads, "Worker threads");
    experiments.push_back(sub);
  }

  auto* graph = app.add_subcommand("graph", "Load or store graph documents");
  graph->require_subcommand(1);
  std::string load_path, store_kind = "gnp", store_n = "30", store_lambda = "3", store_seed = "1";
  auto* load = graph->add_subcommand("load", "Validate a document and print it in canonical form");
  load->add_option("path", load_path, "JSON document")->required();
  auto* store = graph->add_subcommand("store", "Sample a document and write it");
  store->add_option("--kind", store_kind, "gnp, embedding or model_L")
      ->check(CLI::IsMember({"gnp", "embedding", "model_L"}));
  store->add_option("--n", store_n, "Vertex count");
  store->add_option("--lambda", store_lambda, "Average degree");
  store->add_option("--seed", store_seed, "Seed");
  store->add_option("--out", out, "Output path")->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto to_uint = [](const std::string& text, const char* opt) -> std::uint64_t {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
      fail(ErrorKind::usage, std::string("--") + opt + ": expected a non-negative integer");
    try {
      return std::stoull(text);
    } catch (const std::exception&) {
      fail(ErrorKind::usage, std::string("--") + opt + ": out of range");
    }
  };

  if (graph->parsed()) {
    if (!caps.empty()) fail(ErrorKind::usage, "caps do not apply to graph commands");
    if (load->parsed()) {
      const Json doc = read_json_file(load_path);
      const std::string type = doc.is_object() && doc.contains("type") && doc["type"].is_string()
                                   ? doc["type"].get<std::string>()
                                   : "";
      Json canonical;
      if (type == "multigraph") canonical = to_json(multigraph_from_json(doc));
      else if (type == "embedding") canonical = to_json(embedding_from_json(doc));
      else if (type == "model_L") canonical = to_json(model_L_from_json(doc));
      else fail(ErrorKind::parse, "/type: expected multigraph, embedding or model_L");
      std::cout << canonical.dump(2) << '\n';
      return 0;
    }
    Rng rng(to_uint(store_seed, "seed"));
    const std::size_t n = to_uint(store_n, "n");
    const Rational lambda = cli_rational(store_lambda, "--lambda");
    Json doc;
    if (store_kind == "gnp") {
      if (n == 0 || lambda > n) fail(ErrorKind::domain, "need n >= 1 and lambda <= n");
      doc = to_json(sample_gnp(n, lambda / Rational(static_cast<unsigned long>(n)), rng));
    } else if (store_kind == "embedding") {
      doc = to_json(random_integer_embedding(n, rng));
    } else {
      doc = to_json(sample_model_L(make_params(n, lambda, to_uint(store_seed, "seed")), rng));
    }
    write_json_file(out, doc);
    return 0;
  }

  ExperimentConfig config;
  CLI::App* chosen = nullptr;
  for (auto* sub : experiments)
    if (sub->parsed()) chosen = sub;
  if (!config_file.empty()) {
    if (chosen) fail(ErrorKind::usage, "--config replays a stored run; do not name an experiment");
    config = config_from_json(read_json_file(config_file));
    for (const auto& [k, v] : caps) config.caps[k] = v;
  } else {
    if (!chosen) {
      std::cerr << app.help();
      return 2;
    }
    config.experiment = chosen->get_name();
    if (!o.n.empty()) config.n = to_uint(o.n, "n");
    if (!o.d.empty()) config.d = to_uint(o.d, "d");
    if (!o.s.empty()) config.s = to_uint(o.s, "s");
    if (!o.lambda.empty()) config.lambda = cli_rational(o.lambda, "--lambda");
    if (!o.beta.empty()) config.beta = cli_rational(o.beta, "--beta");
    if (!o.c.empty()) config.c = cli_rational(o.c, "--c");
    if (!o.ca.empty()) config.c_a = cli_rational(o.ca, "--ca");
    if (!o.ambient.empty()) config.ambient = o.ambient;
    if (!o.trials.empty()) {
      config.trials = to_uint(o.trials, "trials");
      if (config.trials == 0) fail(ErrorKind::validation, "trials must be >= 1");
    }
    if (!o.seed.empty()) config.master_seed = to_uint(o.seed, "seed");
    config.caps = caps;
  }
  if (!out.empty()) config.output_path = out;
  if (threads) config.threads = threads;
  const auto result = run_experiment(config);
  write_outputs(result);
  std::cerr << result.config.experiment << ": " << result.rows.size() << " trials, " << result.failed
            << " failed -> " << result.config.output_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
}
