// Copyright 2026 The hwalks Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "hwalks/analysis.h"
#include "hwalks/builders.h"
#include "hwalks/characteristics.h"
#include "hwalks/coherence.h"
#include "hwalks/errors.h"
#include "hwalks/spec_file.h"
#include "hwalks/walks.h"
#include "json.hpp"

namespace hwalks::cli {

namespace {

using Json = nlohmann::ordered_json;

// Raised for bad flag combinations detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Common {
  std::string seq;
  int n = 0;
  std::string out;
  std::string format = "text";
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  std::string window;
  std::size_t node_cap = WalkOptions{}.node_cap;
};

void AddCommon(CLI::App* cmd, Common& c, bool needs_seq) {
  auto* seq = cmd->add_option("--seq", c.seq,
                              "spec file or builtin:maximal:<ord> / "
                              "builtin:minimal-fs:<ord>");
  if (needs_seq) seq->required();
  cmd->add_option("--n", c.n, "dimension (builtins default to 1)");
  cmd->add_option("--out", c.out, "write the artifact here instead of stdout");
  cmd->add_option("--seed", c.seed, "sampling seed");
  cmd->add_option("--budget", c.budget, "fundamental-sequence samples");
  cmd->add_option("--window", c.window, "ordinal bound for scans");
  cmd->add_option("--node-cap", c.node_cap, "maximum walk size");
}

void Emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + c.out + "'");
  f << text;
}

Tuple ParseInputTuple(const std::string& text) {
  std::string t = text;
  if (t.empty() || t.front() != '(') t = "(" + t + ")";
  return ParseTuple(t);
}

int WalkArity(const NCSeq& seq, const Common& c, const Tuple& input) {
  const int dim = c.n > 0 ? c.n : seq.n();
  if (static_cast<int>(input.size()) != dim + 1) {
    throw UsageError("expected " + std::to_string(dim + 1) +
                     " entries (alpha and " + std::to_string(dim) +
                     " more) for n=" + std::to_string(dim) + ", got " +
                     std::to_string(input.size()));
  }
  return dim;
}

Ordinal WindowOf(const NCSeq& seq, const Common& c) {
  return c.window.empty() ? seq.domain().StrictSup() : Ordinal::Parse(c.window);
}

void RequireFormat(const std::string& format,
                   std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  throw UsageError("unsupported --format '" + format + "'");
}

std::string CoherenceText(const CoherenceReport& r) {
  std::ostringstream out;
  out << "window " << r.window << "\n";
  out << "indices scanned " << r.indices_scanned
      << (r.exhaustive ? " (exhaustive)" : " (grid sample)") << "\n";
  out << "X has " << r.x_set.size() << " points";
  for (std::size_t i = 0; i < std::min<std::size_t>(r.x_set.size(), 12); ++i) {
    out << (i == 0 ? ": " : ", ") << r.x_set[i];
  }
  if (r.x_set.size() > 12) out << ", ...";
  out << "\n";
  for (const CoherenceViolation& v : r.violations) {
    out << "VIOLATION " << v.kind << " alpha=" << v.alpha
        << " index=" << FormatTuple(v.index) << ": " << v.detail << "\n";
  }
  out << (r.ok() ? "coherent\n" : "NOT coherent\n");
  return out.str();
}

std::string CoherenceJson(const CoherenceReport& r) {
  Json doc;
  doc["window"] = r.window.ToString();
  doc["exhaustive"] = r.exhaustive;
  doc["indices_scanned"] = r.indices_scanned;
  Json x = Json::array();
  for (const Ordinal& o : r.x_set) x.push_back(o.ToString());
  doc["x_set"] = x;
  Json vs = Json::array();
  for (const CoherenceViolation& v : r.violations) {
    vs.push_back({{"kind", v.kind},
                  {"alpha", v.alpha.ToString()},
                  {"index", FormatTuple(v.index)},
                  {"detail", v.detail}});
  }
  doc["violations"] = vs;
  doc["ok"] = r.ok();
  return doc.dump(2) + "\n";
}

std::vector<Ordinal> ParseOrdinalList(const std::string& text) {
  std::vector<Ordinal> out;
  if (text.empty()) return out;
  for (const Ordinal& o : ParseInputTuple(text)) out.push_back(o);
  return out;
}

}  // namespace

NCSeqPtr LoadSeq(const std::string& source, int n) {
  std::string s = source;
  if (s.rfind("builtin:", 0) == 0) s = s.substr(8);
  for (const char* kind : {"maximal:", "minimal-fs:"}) {
    const std::string prefix = kind;
    if (s.rfind(prefix, 0) != 0) continue;
    const int dim = n > 0 ? n : 1;
    if (dim > 3) throw UsageError("builtins support n <= 3");
    const Ordinal lambda = Ordinal::Parse(s.substr(prefix.size()));
    if (prefix == "maximal:") return BuildMaximal(dim, lambda);
    return BuildOrderMinimal(dim, lambda);
  }
  if (source.rfind("builtin:", 0) == 0) {
    throw UsageError("unknown builtin '" + source + "'");
  }
  SpecFile spec = ParseSpecFile(ReadFile(source));
  std::vector<std::string> problems = ValidateSpec(spec);
  if (!problems.empty()) throw DomainError(source + ": " + problems.front());
  if (n > spec.n) {
    throw UsageError("--n " + std::to_string(n) + " exceeds the file's n=" +
                     std::to_string(spec.n));
  }
  return SeqFromSpec(spec);
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"hwalks: higher-dimensional walks on ordinals below w^w", "hwalks"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common c;
  std::string tuple;
  int sign = 1;
  bool truncated = false;

  auto* walk = app.add_subcommand("walk", "print the walk tree from a tuple");
  AddCommon(walk, c, true);
  walk->add_option("--tuple", tuple, "alpha,gamma_1,...,gamma_n")->required();
  walk->add_option("--sign", sign, "root sign, 1 or -1")
      ->check(CLI::IsMember({1, -1}));
  walk->add_flag("--truncated", truncated, "apply the extra stopping rule");
  walk->add_option("--format", c.format, "text, json or dot");

  auto* rho2 = app.add_subcommand("rho2", "signed node count of a walk");
  AddCommon(rho2, c, true);
  rho2->add_option("--tuple", tuple)->required();
  rho2->add_option("--sign", sign)->check(CLI::IsMember({1, -1}));

  auto* resh = app.add_subcommand("resh", "free-abelian walk characteristic");
  AddCommon(resh, c, true);
  resh->add_option("--tuple", tuple)->required();
  resh->add_option("--format", c.format, "text or json");

  auto* coherence = app.add_subcommand("coherence", "check coherence on a window");
  AddCommon(coherence, c, true);
  coherence->add_option("--format", c.format, "text or json");

  std::string lemma_list;
  std::size_t instances = SamplingPlan{}.max_instances;
  auto* suite = app.add_subcommand("suite", "run the lemma checks");
  AddCommon(suite, c, true);
  suite->add_option("--lemmas", lemma_list, "comma-separated subset");
  suite->add_option("--instances", instances, "instances per lemma");
  suite->add_option("--format", c.format, "text or json");

  std::string builder, lambda = "w^2", kappa, s_list, d_src, e_src;
  std::size_t rounds = 40;
  std::uint64_t block = GameOptions{}.block;
  std::string adversary = "random";
  auto* generate = app.add_subcommand("generate", "emit a sequence spec file");
  AddCommon(generate, c, false);
  generate->add_option("builder", builder, "maximal, order-minimal, game, stepped-up")
      ->required()
      ->check(CLI::IsMember({"maximal", "order-minimal", "game", "stepped-up"}));
  generate->add_option("--lambda", lambda, "domain bound for maximal/order-minimal");
  generate->add_option("--rounds", rounds, "game rounds");
  generate->add_option("--block", block, "game successor positions per block");
  generate->add_option("--adversary", adversary, "trivial or random")
      ->check(CLI::IsMember({"trivial", "random"}));
  generate->add_option("--d", d_src, "stepped-up: the D sequence");
  generate->add_option("--e", e_src, "stepped-up: the E sequence");
  generate->add_option("--kappa", kappa, "stepped-up: kappa");
  generate->add_option("--s", s_list, "stepped-up: extra S points, comma-separated");

  std::string file;
  bool print = false;
  auto* parse_check = app.add_subcommand("parse-check", "validate a spec file");
  parse_check->add_option("file", file)->required();
  parse_check->add_flag("--print", print, "print the canonical form");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    WalkOptions wopts{c.node_cap};
    if (walk->parsed()) {
      RequireFormat(c.format, {"text", "json", "dot"});
      NCSeqPtr seq = LoadSeq(c.seq, c.n);
      Tuple input = ParseInputTuple(tuple);
      WalkArity(*seq, c, input);
      WalkTree t = truncated ? TruncatedWalk(*seq, sign, input, wopts)
                             : Walk(*seq, sign, input, wopts);
      Emit(c,
           c.format == "json" ? WalkToJson(t)
           : c.format == "dot" ? WalkToDot(t)
                               : WalkToText(t),
           out);
      return kOk;
    }
    if (rho2->parsed()) {
      NCSeqPtr seq = LoadSeq(c.seq, c.n);
      Tuple input = ParseInputTuple(tuple);
      WalkArity(*seq, c, input);
      Emit(c, std::to_string(Rho2(*seq, sign, input, wopts)) + "\n", out);
      return kOk;
    }
    if (resh->parsed()) {
      RequireFormat(c.format, {"text", "json"});
      NCSeqPtr seq = LoadSeq(c.seq, c.n);
      Tuple input = ParseInputTuple(tuple);
      WalkArity(*seq, c, input);
      FreeAbelian g = Resh(*seq, input, wopts);
      Emit(c, (c.format == "json" ? g.ToJson() : g.ToString()) + "\n", out);
      return kOk;
    }
    if (coherence->parsed()) {
      RequireFormat(c.format, {"text", "json"});
      NCSeqPtr seq = LoadSeq(c.seq, c.n);
      CoherenceReport r = CheckCoherence(*seq, WindowOf(*seq, c));
      Emit(c, c.format == "json" ? CoherenceJson(r) : CoherenceText(r), out);
      return r.ok() ? kOk : kVerificationFailure;
    }
    if (suite->parsed()) {
      RequireFormat(c.format, {"text", "json"});
      NCSeqPtr seq = LoadSeq(c.seq, c.n);
      SamplingPlan plan = DefaultPlan(*seq);
      plan.seed = c.seed;
      plan.max_instances = instances;
      plan.walk = wopts;
      if (c.budget > 0) plan.fs_budget = c.budget;
      std::set<std::string> lemmas;
      std::stringstream ls(lemma_list);
      for (std::string item; std::getline(ls, item, ',');) {
        if (!item.empty()) lemmas.insert(item);
      }
      SuiteReport r = RunLemmaSuite(*seq, plan, lemmas);
      std::string text;
      if (c.format == "json") {
        text = r.ToJson() + "\n";
      } else {
        std::ostringstream os;
        for (const LemmaOutcome& o : r.outcomes) {
          os << "LEMMA " << o.lemma << " instance=" << FormatTuple(o.instance)
             << " verdict=" << (o.pass ? "pass" : "fail") << "\n";
          if (!o.pass) {
            std::istringstream detail(o.detail);
            for (std::string line; std::getline(detail, line);) os << "  | " << line << "\n";
          }
        }
        os << "SUMMARY outcomes=" << r.outcomes.size() << " failures=" << r.failures()
           << "\n";
        text = os.str();
      }
      Emit(c, text, out);
      if (r.ok()) return kOk;
      const bool only_caps = std::all_of(
          r.outcomes.begin(), r.outcomes.end(),
          [](const LemmaOutcome& o) { return o.pass || o.resource_limited; });
      return only_caps ? kResourceCap : kVerificationFailure;
    }
    if (generate->parsed()) {
      SpecFile spec;
      const int n = c.n > 0 ? c.n : 1;
      if (builder == "maximal" || builder == "order-minimal") {
        NCSeqPtr seq = builder == "maximal" ? NCSeqPtr(BuildMaximal(n, Ordinal::Parse(lambda)))
                                            : NCSeqPtr(BuildOrderMinimal(n, Ordinal::Parse(lambda)));
        // Rule-built sequences are described by their base rule alone.
        spec.n = n;
        spec.domain = seq->domain();
        spec.base = builder == "maximal" ? "maximal" : "minimal-fs";
        spec.comments.push_back("generated: " + builder + " n=" + std::to_string(n) +
                                " lambda=" + lambda);
      } else if (builder == "game") {
        static const TrivialAdversary kTrivial;
        static const RandomAdversary kRandom;
        GameOptions g;
        g.n = n;
        g.rounds = rounds;
        g.block = block;
        g.seed = c.seed;
        g.adversary = adversary == "trivial" ? static_cast<const Adversary*>(&kTrivial)
                                             : &kRandom;
        spec = BuildByGame(g).ToSpec();
      } else {
        if (d_src.empty() || e_src.empty() || kappa.empty()) {
          throw UsageError("stepped-up needs --d, --e and --kappa");
        }
        auto stepped = BuildSteppedUp(LoadSeq(d_src, 1), LoadSeq(e_src, 1),
                                      ParseOrdinalList(s_list), Ordinal::Parse(kappa));
        spec = SpecFromSeq(*stepped, WindowOf(*stepped, c));
        spec.comments.push_back("generated: stepped-up d=" + d_src + " e=" + e_src +
                                " kappa=" + kappa);
      }
      Emit(c, PrintSpecFile(spec), out);
      return kOk;
    }
    if (parse_check->parsed()) {
      SpecFile spec = ParseSpecFile(ReadFile(file));
      std::vector<std::string> problems = ValidateSpec(spec);
      for (const std::string& p : problems) out << "INVALID " << p << "\n";
      if (!problems.empty()) return kVerificationFailure;
      if (print) {
        out << PrintSpecFile(spec);
      } else {
        out << "ok n=" << spec.n << " entries=" << spec.entries.size() << "\n";
      }
      return kOk;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceLimitError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResourceCap;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace hwalks::cli
