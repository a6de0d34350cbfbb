/*
 * Copyright 2026 The plureq authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "plureq/decide.hpp"
#include "plureq/io.hpp"
#include "plureq/poa.hpp"
#include "plureq/solve.hpp"

namespace {

using namespace plureq;

// sysexits-style: 0 yes/ok, 1 no, 2 unknown or out of budget,
// 64 usage, 65 bad input data, 70 internal failure.
constexpr int kExitNo = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitInternal = 70;

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct GameFlags {
  std::string setting = "lazy";
  std::string tie = "lex";
  std::string policy = "full-tie";
  long long budget = kDefaultBudget;
  std::string format = "table";
};

void add_game_flags(CLI::App* cmd, GameFlags& f) {
  cmd->add_option("--setting", f.setting, "voter setting")
      ->check(CLI::IsMember({"lazy", "truth"}))
      ->capture_default_str();
  cmd->add_option("--tie", f.tie, "tie breaking rule")
      ->check(CLI::IsMember({"lex", "rand-cand", "rand-voter"}))
      ->capture_default_str();
  cmd->add_option("--trivial-policy", f.policy, "meaning of the all-abstain profile")
      ->check(CLI::IsMember({"full-tie", "invalid"}))
      ->capture_default_str();
  cmd->add_option("--budget", f.budget, "largest search space the solver may enumerate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_format_flag(CLI::App* cmd, GameFlags& f) {
  cmd->add_option("--format", f.format, "output style")
      ->check(CLI::IsMember({"table", "machine"}))
      ->capture_default_str();
}

GameSpec make_game(const ElectionDocument& doc, const GameFlags& f) {
  GameSpec g;
  g.election = to_election(doc);
  g.setting = f.setting == "lazy" ? Setting::Lazy : Setting::TruthBiased;
  g.rule = f.tie == "lex"         ? TieRule::Lex
           : f.tie == "rand-cand" ? TieRule::RandCand
                                  : TieRule::RandVoter;
  g.principled = doc.principled;
  g.trivial_policy =
      f.policy == "full-tie" ? TrivialBallotPolicy::FullTie : TrivialBallotPolicy::Invalid;
  return g;
}

std::string ballot_name(const ElectionDocument& doc, Ballot b) {
  return b == kAbstain ? "abstain" : doc.candidates[b];
}

std::string rat_string(const Rat& r) {
  std::ostringstream ss;
  ss << r;
  return ss.str();
}

Json ballots_json(const ElectionDocument& doc, const BallotVector& b) {
  Json arr = Json::array();
  for (Ballot x : b) arr.push_back(ballot_name(doc, x));
  return arr;
}

std::string ballots_text(const ElectionDocument& doc, const BallotVector& b) {
  std::string out;
  for (size_t i = 0; i < b.size(); ++i) {
    if (i) out += ", ";
    out += ballot_name(doc, b[i]);
  }
  return out;
}

Json lottery_json(const ElectionDocument& doc, const Lottery& lot) {
  Json obj = Json::object();
  for (size_t c = 0; c < lot.p.size(); ++c)
    if (!lot.p[c].is_zero()) obj[doc.candidates[c]] = rat_string(lot.p[c]);
  return obj;
}

std::string lottery_text(const ElectionDocument& doc, const Lottery& lot) {
  std::string out;
  for (size_t c = 0; c < lot.p.size(); ++c) {
    if (lot.p[c].is_zero()) continue;
    if (!out.empty()) out += " ";
    out += doc.candidates[c] + "=" + rat_string(lot.p[c]);
  }
  return out;
}

BallotVector parse_ballots(const ElectionDocument& doc, const std::string& text) {
  BallotVector b;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto begin = tok.find_first_not_of(" \t");
    if (begin == std::string::npos) throw DataError("empty ballot entry");
    const auto end = tok.find_last_not_of(" \t");
    tok = tok.substr(begin, end - begin + 1);
    if (tok == "abstain" || tok == "-")
      b.push_back(kAbstain);
    else
      b.push_back(candidate_id(doc, tok));
  }
  if (b.size() != doc.voters.size())
    throw DataError("need one ballot per voter (" + std::to_string(doc.voters.size()) + ")");
  return b;
}

int run_analyze(const std::string& path, const GameFlags& f) {
  const ElectionDocument doc = parse_election_text(read_input(path));
  const GameSpec g = make_game(doc, f);

  std::vector<BallotVector> equilibria;
  if (!g.principled.empty() ||
      (g.setting == Setting::Lazy && g.trivial_policy == TrivialBallotPolicy::Invalid))
    equilibria = enumerate_pne(g, f.budget);
  else
    equilibria = characterized_pne(g, f.budget);

  if (f.format == "machine") {
    Json out = Json::object();
    out["count"] = equilibria.size();
    Json list = Json::array();
    for (const BallotVector& b : equilibria) {
      Json item = Json::object();
      item["ballots"] = ballots_json(doc, b);
      item["lottery"] = lottery_json(doc, lottery(g.election, b, g.rule, g.principled));
      list.push_back(std::move(item));
    }
    out["equilibria"] = std::move(list);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "equilibria: " << equilibria.size() << "\n";
    for (size_t i = 0; i < equilibria.size(); ++i) {
      const BallotVector& b = equilibria[i];
      std::cout << "  #" << (i + 1) << "  " << ballots_text(doc, b) << "  ->  "
                << lottery_text(doc, lottery(g.election, b, g.rule, g.principled)) << "\n";
    }
  }
  return 0;
}

int run_decide(const std::string& problem, const std::string& path, const std::string& target,
               const GameFlags& f) {
  const ElectionDocument doc = parse_election_text(read_input(path));
  if (!doc.principled.empty())
    throw DataError("decision questions cover elections without principled voters");

  DecisionQuery q;
  q.problem = problem == "exist-ne" ? Problem::ExistNe
              : problem == "tie-ne" ? Problem::TieNe
                                    : Problem::SingleNe;
  q.setting = f.setting == "lazy" ? Setting::Lazy : Setting::TruthBiased;
  q.rule = f.tie == "lex"         ? TieRule::Lex
           : f.tie == "rand-cand" ? TieRule::RandCand
                                  : TieRule::RandVoter;
  q.trivial_policy =
      f.policy == "full-tie" ? TrivialBallotPolicy::FullTie : TrivialBallotPolicy::Invalid;
  if (q.problem == Problem::SingleNe) {
    if (target.empty()) throw DataError("single-ne needs --target");
    q.target = candidate_id(doc, target);
  } else if (!target.empty()) {
    throw DataError("--target only applies to single-ne");
  }

  const DecisionResult res = decide(q, to_election(doc), f.budget);
  const char* answer = res.answer == Answer::Yes ? "yes" : res.answer == Answer::No ? "no" : "unknown";
  const char* method = res.method == Method::Poly ? "poly" : "search";

  if (f.format == "machine") {
    Json out = Json::object();
    out["answer"] = answer;
    out["method"] = method;
    out["search_completed"] = res.search_completed;
    if (res.witness) out["witness"] = ballots_json(doc, *res.witness);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "answer: " << answer << "\n";
    std::cout << "method: " << method << "\n";
    if (!res.search_completed) std::cout << "search stopped at the budget\n";
    if (res.witness) std::cout << "witness: " << ballots_text(doc, *res.witness) << "\n";
  }
  return res.answer == Answer::Yes ? 0 : res.answer == Answer::No ? kExitNo : kExitUnknown;
}

int run_poa(const std::string& path, const GameFlags& f) {
  const ElectionDocument doc = parse_election_text(read_input(path));
  if (!doc.principled.empty())
    throw DataError("the anarchy gap covers elections without principled voters");
  const GameSpec g = make_game(doc, f);
  const PoAReport rep = poa_additive(g, f.budget);

  if (f.format == "machine") {
    Json out = Json::object();
    out["defined"] = rep.defined;
    if (rep.defined) {
      out["sincere_winner_score"] = rep.truthful_winner_score;
      out["worst_equilibrium_winner_sincere_score"] = rep.worst_pne_winner_truthful_score;
      out["gap"] = rep.gap;
      out["witness"] = ballots_json(doc, *rep.witness);
    }
    std::cout << out.dump(2) << "\n";
  } else if (!rep.defined) {
    std::cout << "no equilibrium, gap undefined\n";
  } else {
    std::cout << "sincere winner score: " << rep.truthful_winner_score << "\n";
    std::cout << "worst equilibrium winner sincere score: " << rep.worst_pne_winner_truthful_score
              << "\n";
    std::cout << "gap: " << rep.gap << "\n";
    std::cout << "witness: " << ballots_text(doc, *rep.witness) << "\n";
  }
  return 0;
}

int run_lottery(const std::string& path, const std::string& ballots, const GameFlags& f) {
  const ElectionDocument doc = parse_election_text(read_input(path));
  const Election e = to_election(doc);
  const BallotVector b = parse_ballots(doc, ballots);
  const TieRule rule = f.tie == "lex"         ? TieRule::Lex
                       : f.tie == "rand-cand" ? TieRule::RandCand
                                              : TieRule::RandVoter;
  const Lottery lot = lottery(e, b, rule, doc.principled);

  if (f.format == "machine") {
    Json out = Json::object();
    out["lottery"] = lottery_json(doc, lot);
    Json eu = Json::array();
    for (const auto& u : e.utility) eu.push_back(rat_string(expected_utility(u, lot)));
    out["expected_utility"] = std::move(eu);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "lottery: " << lottery_text(doc, lot) << "\n";
    for (size_t i = 0; i < e.utility.size(); ++i)
      std::cout << "voter " << (i + 1)
                << " expected utility: " << rat_string(expected_utility(e.utility[i], lot)) << "\n";
  }
  return 0;
}

int run_gen(const std::string& which, int voters) {
  ElectionDocument doc;
  if (which == "comparison-example") {
    doc = election_document(gen_comparison_example(), {}, "comparison-example");
  } else if (which == "lazy-poa") {
    doc = election_document(gen_lazy_poa(voters), {}, "lazy-poa-" + std::to_string(voters));
  } else if (which == "truth-poa") {
    doc = election_document(gen_truth_poa(voters), {}, "truth-poa-" + std::to_string(voters));
  } else {
    const RcVsRvExample ex = gen_rc_vs_rv();
    doc = election_document(ex.election, ex.principled, "rc-vs-rv");
    doc.meta = Json::object();
    Json profile = Json::array();
    for (Ballot b : ex.profile) profile.push_back(ballot_name(doc, b));
    doc.meta["profile"] = std::move(profile);
  }
  std::cout << to_json(doc).dump(2) << "\n";
  return 0;
}

int run_reduce_msi(const std::string& path) {
  const MsiDocument doc = parse_msi_text(read_input(path));
  ReducedElection red;
  try {
    red = msi_to_election(doc.instance);
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  std::vector<std::string> names = doc.elements;
  const ElectionDocument out =
      election_document(red, names, doc.name.empty() ? "reduced" : doc.name + "-reduced");
  std::cout << to_json(out).dump(2) << "\n";
  return 0;
}

int run_reduce_bcbs(const std::string& path) {
  const BcbsDocument doc = parse_bcbs_text(read_input(path));
  std::cout << to_json(msi_document(doc)).dump(2) << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"equilibrium analysis for plurality voting games"};
  app.require_subcommand(1);

  GameFlags flags;
  std::string path, target, ballots, problem, which;
  int gen_voters = 6;

  CLI::App* analyze = app.add_subcommand("analyze", "list all pure equilibria");
  analyze->add_option("file", path, "election document, - for stdin")->required();
  add_game_flags(analyze, flags);
  add_format_flag(analyze, flags);

  CLI::App* dec = app.add_subcommand("decide", "answer an equilibrium existence question");
  dec->add_option("problem", problem, "exist-ne, tie-ne or single-ne")
      ->required()
      ->check(CLI::IsMember({"exist-ne", "tie-ne", "single-ne"}));
  dec->add_option("file", path, "election document, - for stdin")->required();
  dec->add_option("--target", target, "candidate name for single-ne");
  add_game_flags(dec, flags);
  add_format_flag(dec, flags);

  CLI::App* poa = app.add_subcommand("poa", "additive anarchy gap over all equilibria");
  poa->add_option("file", path, "election document, - for stdin")->required();
  add_game_flags(poa, flags);
  add_format_flag(poa, flags);

  CLI::App* lot = app.add_subcommand("lottery", "winner distribution for a ballot profile");
  lot->add_option("file", path, "election document, - for stdin")->required();
  lot->add_option("--ballots", ballots, "comma separated, candidate name or abstain")->required();
  lot->add_option("--tie", flags.tie, "tie breaking rule")
      ->check(CLI::IsMember({"lex", "rand-cand", "rand-voter"}))
      ->capture_default_str();
  add_format_flag(lot, flags);

  CLI::App* gen = app.add_subcommand("gen", "write a built-in example election");
  gen->add_option("which", which, "comparison-example, lazy-poa, truth-poa or rc-vs-rv")
      ->required()
      ->check(CLI::IsMember({"comparison-example", "lazy-poa", "truth-poa", "rc-vs-rv"}));
  gen->add_option("--voters", gen_voters, "electorate size for the gap families")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI::App* reduce = app.add_subcommand("reduce", "rewrite one problem as another");
  CLI::App* r_msi =
      reduce->add_subcommand("msi-to-election", "set intersection to single winner question");
  r_msi->add_option("file", path, "instance document, - for stdin")->required();
  CLI::App* r_bcbs =
      reduce->add_subcommand("bcbs-to-msi", "balanced subgraph to set intersection");
  r_bcbs->add_option("file", path, "graph document, - for stdin")->required();
  reduce->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (analyze->parsed()) return run_analyze(path, flags);
    if (dec->parsed()) return run_decide(problem, path, target, flags);
    if (poa->parsed()) return run_poa(path, flags);
    if (lot->parsed()) return run_lottery(path, ballots, flags);
    if (gen->parsed()) return run_gen(which, gen_voters);
    if (r_msi->parsed()) return run_reduce_msi(path);
    if (r_bcbs->parsed()) return run_reduce_bcbs(path);
  } catch (const BudgetExceeded& e) {
    std::cerr << "out of budget: " << e.what() << "\n";
    return kExitUnknown;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
