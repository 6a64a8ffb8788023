// Command-line front end: parsing, structural checks, evaluation,
// determinization, bounded equivalence, graph export and Mealy utilities.
//
// Exit codes: 0 success / equivalent, 1 negative verdict (counterexample,
// budget exceeded, not established), 2 usage or parse errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>

#include "wta/wta.hpp"

using namespace wta;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitUsage = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw Error("cannot write " + out_path);
  out << text;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

template <Bimonoid B>
Tree tree_input(const Wta<B>& A, const std::string& tree_text, const std::string& word_text) {
  if (!word_text.empty()) {
    std::vector<std::string> letters;
    for (char ch : word_text) letters.emplace_back(1, ch);
    return word_to_tree(A.alphabet, letters);
  }
  Tree t = parse_tree(tree_text);
  if (auto err = check_tree(A.alphabet, t)) throw AlphabetMismatch(*err);
  return t;
}

int cmd_check(const std::string& file) {
  WtaDoc doc = read_wta_doc(slurp(file));
  if (doc.algebra_mode) {
    AnyAlgebra any = parse_algebra(slurp(file));
    std::visit(
        [&](const auto& K) {
          using B = typename std::remove_cvref_t<decltype(K)>::Bim;
          std::cout << "bimonoid: " << B::name() << " (semiring: " << yesno(B::is_semiring)
                    << ", additively idempotent: " << yesno(B::is_add_idempotent) << ")\n";
          std::cout << "mode: algebra\n";
          std::cout << "carrier: " << K.carrier.size() << "\n";
          std::cout << "accessible: "
                    << yesno(accessible_part(K).carrier.size() == K.carrier.size()) << "\n";
        },
        any);
    return kExitOk;
  }
  AnyWta any = parse_wta(slurp(file));
  std::visit(
      [&](const auto& A) {
        using B = typename std::remove_cvref_t<decltype(A)>::Bim;
        std::cout << "bimonoid: " << B::name() << " (semiring: " << yesno(B::is_semiring)
                  << ", additively idempotent: " << yesno(B::is_add_idempotent) << ")\n";
        std::cout << "states: " << A.states.size() << "\n";
        std::cout << "transitions: " << A.delta.size() << "\n";
        std::cout << "bu-deterministic: " << yesno(is_bu_deterministic(A)) << "\n";
        std::cout << "total: " << yesno(is_total(A)) << "\n";
        std::cout << "crisp-deterministic: " << yesno(is_crisp_deterministic(A)) << "\n";
      },
      any);
  return kExitOk;
}

int cmd_eval(const std::string& file, const std::string& tree_text, const std::string& word_text,
             const std::string& semantics) {
  WtaDoc doc = read_wta_doc(slurp(file));
  if (doc.algebra_mode) {
    if (semantics != "init") throw Error("algebra files only support --semantics init");
    AnyAlgebra any = parse_algebra(slurp(file));
    return std::visit(
        [&](const auto& K) {
          using B = typename std::remove_cvref_t<decltype(K)>::Bim;
          Tree t = word_text.empty() ? parse_tree(tree_text)
                                     : word_to_tree(K.alphabet, [&] {
                                         std::vector<std::string> ls;
                                         for (char ch : word_text) ls.emplace_back(1, ch);
                                         return ls;
                                       }());
          std::cout << "init: " << B::print(alg_eval(K, t)) << "\n";
          return kExitOk;
        },
        any);
  }
  AnyWta any = parse_wta(slurp(file));
  return std::visit(
      [&](const auto& A) {
        using B = typename std::remove_cvref_t<decltype(A)>::Bim;
        Tree t = tree_input(A, tree_text, word_text);
        if (semantics == "init") {
          std::cout << "init: " << B::print(eval_init(A, t)) << "\n";
        } else if (semantics == "run") {
          std::cout << "run: " << B::print(eval_run(A, t)) << "\n";
        } else {
          auto i = eval_init(A, t);
          auto r = eval_run(A, t);
          std::cout << "init: " << B::print(i) << "\n";
          std::cout << "run: " << B::print(r) << "\n";
          std::cout << "agree: " << yesno(i == r) << "\n";
        }
        return kExitOk;
      },
      any);
}

int cmd_determinize(const std::string& file, const std::string& mode, std::uint64_t max_states,
                    std::uint64_t closure_budget, std::uint64_t order_budget,
                    const std::string& out_path) {
  AnyWta any = parse_wta(slurp(file));
  return std::visit(
      [&](const auto& A) {
        using B = typename std::remove_cvref_t<decltype(A)>::Bim;
        if (mode == "init") {
          auto res = build_nerode(A, max_states);
          if (auto* exceeded = std::get_if<BudgetExceeded>(&res)) {
            std::cout << "budget exceeded: more than " << max_states
                      << " vector states (explored " << exceeded->explored << ")\n";
            return kExitVerdict;
          }
          auto& success = std::get<NerodeSuccess<B>>(res);
          std::cout << "states: " << success.automaton.states.size() << "\n";
          for (std::size_t i = 0; i < success.witnesses.size(); ++i)
            std::cout << "witness " << success.automaton.states[i] << " = "
                      << success.witnesses[i].str() << "\n";
          emit(out_path, print_wta(success.automaton));
          return kExitOk;
        }
        auto order = check_finite_order_property(A, closure_budget, order_budget);
        if (auto* failed = std::get_if<NotEstablished>(&order)) {
          std::cout << "not established: "
                    << (failed->stage == OrderStage::MultClosure
                            ? "transition-weight closure exceeded the budget"
                            : "additive order exceeded the budget")
                    << "\n";
          return kExitVerdict;
        }
        auto& od = std::get<OrderData<B>>(order);
        std::cout << "weight closure: " << od.closure.size() << " elements, index " << od.index
                  << ", period " << od.period << "\n";
        auto res = build_run_det(A, od, max_states);
        if (auto* exceeded = std::get_if<BudgetExceeded>(&res)) {
          std::cout << "budget exceeded: more than " << max_states
                    << " residue states (explored " << exceeded->explored << ")\n";
          return kExitVerdict;
        }
        auto& R = std::get<Wta<B>>(res);
        std::cout << "states: " << R.states.size() << "\n";
        emit(out_path, print_wta(R));
        return kExitOk;
      },
      any);
}

int cmd_equiv(const std::string& file_a, const std::string& file_b, const std::string& semantics,
              int max_size, const std::string& word_text) {
  AnyWta any_a = parse_wta(slurp(file_a));
  AnyWta any_b = parse_wta(slurp(file_b));
  if (any_a.index() != any_b.index())
    throw AlphabetMismatch("the automata use different weight domains");

  std::string sem_a = semantics, sem_b = semantics;
  if (auto colon = semantics.find(':'); colon != std::string::npos) {
    sem_a = semantics.substr(0, colon);
    sem_b = semantics.substr(colon + 1);
  }
  for (const auto& s : {sem_a, sem_b})
    if (s != "init" && s != "run") throw Error("unknown semantics: " + s);

  return std::visit(
      [&](const auto& A) {
        using WtaT = std::remove_cvref_t<decltype(A)>;
        using B = typename WtaT::Bim;
        const auto& Bwta = std::get<WtaT>(any_b);
        if (!(A.alphabet == Bwta.alphabet))
          throw AlphabetMismatch("the automata use different ranked alphabets");
        auto value = [&](const WtaT& W, const std::string& sem, const Tree& t) {
          return sem == "init" ? eval_init(W, t) : eval_run(W, t);
        };
        if (!word_text.empty()) {
          std::vector<std::string> letters;
          for (char ch : word_text) letters.emplace_back(1, ch);
          Tree t = word_to_tree(A.alphabet, letters);
          auto va = value(A, sem_a, t);
          auto vb = value(Bwta, sem_b, t);
          if (va == vb) {
            std::cout << "equal on word: " << B::print(va) << "\n";
            return kExitOk;
          }
          std::cout << "counterexample: " << t.str() << " (" << B::print(va) << " vs "
                    << B::print(vb) << ")\n";
          return kExitVerdict;
        }
        TreeStream stream(A.alphabet, max_size);
        while (auto t = stream.next()) {
          auto va = value(A, sem_a, *t);
          auto vb = value(Bwta, sem_b, *t);
          if (!(va == vb)) {
            std::cout << "counterexample: " << t->str() << " (" << B::print(va) << " vs "
                      << B::print(vb) << ")\n";
            return kExitVerdict;
          }
        }
        std::cout << "equivalent up to size " << max_size << "\n";
        return kExitOk;
      },
      any_a);
}

int cmd_export(const std::string& file, const std::string& format, const std::string& out_path) {
  if (format != "graph") throw Error("unknown export format: " + format);
  AnyWta any = parse_wta(slurp(file));
  std::visit([&](const auto& A) { emit(out_path, export_hypergraph(A)); }, any);
  return kExitOk;
}

int cmd_mealy_explore(const std::string& file, std::uint64_t budget) {
  std::istringstream in(slurp(file));
  MealyMachine M = parse_mealy(in);
  auto res = explore_monoid(M, budget);
  if (auto* exceeded = std::get_if<BudgetExceeded>(&res)) {
    std::cout << "budget exceeded: more than " << budget << " distinct mappings (explored "
              << exceeded->explored << ")\n";
    return kExitVerdict;
  }
  auto& closure = std::get<std::set<SeqFn>>(res);
  std::cout << "finite: " << closure.size() << " mappings\n";
  for (const SeqFn& f : closure) std::cout << f.encode() << "\n";
  return kExitOk;
}

int cmd_mealy_to_wta(const std::string& file, const std::string& out_path) {
  std::istringstream in(slurp(file));
  MealyMachine M = parse_mealy(in);
  emit(out_path, print_wta(to_wta(M)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted tree automata over strong bimonoids"};
  app.require_subcommand(1);

  std::string file, file_b, out_path;
  std::string tree_text, word_text;
  std::string semantics = "both";
  std::string mode = "init";
  std::string format = "graph";
  int max_size = 6;
  std::uint64_t max_states = 10000, closure_budget = 10000, order_budget = 10000;
  std::uint64_t budget = 10000;

  auto* check = app.add_subcommand("check", "parse a file and report structural properties");
  check->add_option("file", file)->required();

  auto* eval = app.add_subcommand("eval", "evaluate a tree or word");
  eval->add_option("file", file)->required();
  auto* topt = eval->add_option("--tree", tree_text, "tree text, e.g. sigma(alpha,gamma(alpha))");
  auto* wopt = eval->add_option("--word", word_text, "word sugar for monadic alphabets");
  eval->add_option("--semantics", semantics)->check(CLI::IsMember({"init", "run", "both"}));
  topt->excludes(wopt);

  auto* det = app.add_subcommand("determinize", "construct a crisp-deterministic equivalent");
  det->add_option("file", file)->required();
  det->add_option("--mode", mode)->check(CLI::IsMember({"init", "run"}));
  det->add_option("--max-states", max_states);
  det->add_option("--closure-budget", closure_budget);
  det->add_option("--order-budget", order_budget);
  det->add_option("-o,--output", out_path);

  std::string equiv_semantics = "init";
  auto* equiv = app.add_subcommand("equiv", "compare two automata on all trees up to a size");
  equiv->add_option("file_a", file)->required();
  equiv->add_option("file_b", file_b)->required();
  equiv->add_option("--semantics", equiv_semantics,
                    "init, run, or a:b to mix (a for the first file, b for the second)");
  equiv->add_option("--max-size", max_size);
  equiv->add_option("--word", word_text, "compare on a single word instead");

  auto* exp = app.add_subcommand("export", "emit a graph description of the automaton");
  exp->add_option("file", file)->required();
  exp->add_option("--format", format);
  exp->add_option("-o,--output", out_path);

  auto* mealy = app.add_subcommand("mealy", "mealy machine utilities");
  mealy->require_subcommand(1);
  auto* explore = mealy->add_subcommand("explore", "close the induced mappings under composition");
  explore->add_option("file", file)->required();
  explore->add_option("--budget", budget);
  auto* towta = mealy->add_subcommand("to-wta", "simulate the machine as a one-state automaton");
  towta->add_option("file", file)->required();
  towta->add_option("-o,--output", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(file);
    if (eval->parsed()) {
      if (tree_text.empty() && word_text.empty())
        throw Error("eval needs --tree or --word");
      if (semantics != "init" && semantics != "run" && semantics != "both")
        throw Error("unknown semantics: " + semantics);
      return cmd_eval(file, tree_text, word_text, semantics);
    }
    if (det->parsed())
      return cmd_determinize(file, mode, max_states, closure_budget, order_budget, out_path);
    if (equiv->parsed()) return cmd_equiv(file, file_b, equiv_semantics, max_size, word_text);
    if (exp->parsed()) return cmd_export(file, format, out_path);
    if (explore->parsed()) return cmd_mealy_explore(file, budget);
    if (towta->parsed()) return cmd_mealy_to_wta(file, out_path);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
