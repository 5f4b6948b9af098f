#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qfock/fock.hpp"
#include "qfock/pair_partition.hpp"
#include "qfock/poly.hpp"
#include "qfock/pset.hpp"
#include "qfock/sign_sequence.hpp"
#include "qfock/verify.hpp"

namespace qfock::cli {

enum class Format { text, json, csv };

namespace detail {

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

inline SignSequence parse_sign_sequence(const std::string& text) {
  std::vector<int> values;
  for (const auto& token : split(text, ',')) {
    if (token == "1" || token == "+1") {
      values.push_back(1);
    } else if (token == "-1") {
      values.push_back(-1);
    } else {
      throw std::invalid_argument("sign entries must be 1 or -1, got '" +
                                  token + "'");
    }
  }
  if (values.empty()) throw std::invalid_argument("empty sign sequence");
  return SignSequence(std::move(values));
}

inline PairPartition parse_partition(const std::string& text) {
  std::vector<PairPartition::Pair> pairs;
  for (const auto& token : split(text, ',')) {
    const auto dash = token.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == token.size())
      throw std::invalid_argument("pairs are written l-r, got '" + token +
                                  "'");
    try {
      pairs.emplace_back(std::stoi(token.substr(0, dash)),
                         std::stoi(token.substr(dash + 1)));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("pairs are written l-r, got '" + token +
                                  "'");
    }
  }
  return PairPartition(std::move(pairs));
}

inline std::vector<Rational> parse_q_grid(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& token : split(text, ',')) out.push_back(parse_rational(token));
  if (out.empty()) throw std::invalid_argument("empty q grid");
  return out;
}

/// Gram file: a header line "dim n" followed by an n x n matrix of rational
/// entries, whitespace-separated. The matrix must be symmetric with a
/// non-negative diagonal.
inline GramSource load_gram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open gram file '" + path + "'");
  std::string keyword;
  int size = 0;
  if (!(in >> keyword >> size) || keyword != "dim" || size <= 0)
    throw std::invalid_argument("gram file must start with a 'dim n' header");
  std::vector<std::vector<Rational>> matrix(size, std::vector<Rational>(size));
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) {
      std::string cell;
      if (!(in >> cell))
        throw std::invalid_argument("gram file ends before the matrix does");
      matrix[i][j] = parse_rational(cell);
    }
  return GramSource::from_matrix(std::move(matrix));
}

inline nlohmann::json to_json(const PairPartition& theta) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [l, r] : theta.pairs()) pairs.push_back({l, r});
  return nlohmann::json{{"pairs", pairs}};
}

inline nlohmann::json to_json(const MultiPoly& poly) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [mono, coeff] : poly.terms()) {
    nlohmann::json gram = nlohmann::json::array();
    for (const auto& [i, j] : mono.gram) gram.push_back({i, j});
    terms.push_back({{"q", mono.q_exp},
                     {"gram", gram},
                     {"coeff", to_string(coeff)}});
  }
  return nlohmann::json{{"terms", terms}};
}

inline nlohmann::json to_json(const std::vector<VerifyReport>& reports) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : reports) {
    rows.push_back({{"check", r.check},
                    {"instance", r.instance},
                    {"status", r.passed ? "pass" : "fail"},
                    {"detail", r.detail}});
  }
  return nlohmann::json{{"reports", rows}};
}

inline std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

inline void emit_partitions(const std::vector<PairPartition>& list,
                            Format format, std::ostream& out) {
  if (format == Format::json) {
    nlohmann::json body = nlohmann::json::array();
    for (const auto& theta : list) body.push_back(to_json(theta));
    out << nlohmann::json{{"partitions", body}}.dump(2) << '\n';
  } else {
    for (const auto& theta : list) out << theta.str() << '\n';
  }
}

inline void emit_poly(const MultiPoly& poly, Format format,
                      std::ostream& out) {
  switch (format) {
    case Format::json:
      out << to_json(poly).dump(2) << '\n';
      break;
    case Format::csv:
      out << "q_exp,gram,coeff\n";
      for (const auto& [mono, coeff] : poly.terms()) {
        std::string gram;
        for (const auto& [i, j] : mono.gram) {
          if (!gram.empty()) gram += ' ';
          gram += std::to_string(i) + "-" + std::to_string(j);
        }
        out << mono.q_exp << ',' << csv_quote(gram) << ','
            << csv_quote(to_string(coeff)) << '\n';
      }
      break;
    case Format::text:
      out << poly.str() << '\n';
      break;
  }
}

inline void emit_reports(const std::vector<VerifyReport>& reports,
                         Format format, std::ostream& out) {
  if (format == Format::json) {
    out << to_json(reports).dump(2) << '\n';
    return;
  }
  if (format == Format::csv) {
    out << "check,instance,status,detail\n";
    for (const auto& r : reports)
      out << csv_quote(r.check) << ',' << csv_quote(r.instance) << ','
          << (r.passed ? "pass" : "fail") << ',' << csv_quote(r.detail)
          << '\n';
    return;
  }
  std::size_t failed = 0;
  for (const auto& r : reports) {
    if (r.passed) continue;
    ++failed;
    out << "FAIL " << r.check << "  " << r.instance << "  " << r.detail
        << '\n';
  }
  out << reports.size() << " checks, " << failed << " failed\n";
}

inline int word_cap_guard(const SignSequence& eps, int max_n) {
  if (int(eps.size()) > 2 * max_n)
    throw std::out_of_range("sign sequence longer than 2*max-n = " +
                            std::to_string(2 * max_n));
  return 0;
}

}  // namespace detail

/// Runs the command-line front end on the given arguments (program name
/// excluded). Returns 0 on success, 1 when a verification report fails, and
/// 2 on usage or input errors.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"vacuum moments and pair-partition combinatorics of the "
               "deformed Fock space"};
  app.require_subcommand(1);

  Format format = Format::text;
  const std::map<std::string, Format> format_names{
      {"text", Format::text}, {"json", Format::json}, {"csv", Format::csv}};
  app.add_option("--format", format, "output format")
      ->transform(CLI::CheckedTransformer(format_names))
      ->capture_default_str();

  int max_n = kDefaultMaxN;
  if (const char* env = std::getenv("QFOCK_MAX_N")) {
    try {
      max_n = std::stoi(env);
    } catch (const std::exception&) {
      err << "error: QFOCK_MAX_N is not an integer\n";
      return 2;
    }
  }
  app.add_option("--max-n", max_n,
                 "enumeration cap on n (env QFOCK_MAX_N); use at own risk");

  auto add_sub = [&](const std::string& name, const std::string& desc) {
    auto* sub = app.add_subcommand(name, desc);
    sub->fallthrough();
    return sub;
  };

  int n_arg = 0;
  auto* cmd_signs =
      add_sub("enumerate-signs", "all positive-class sign words of length 2n");
  cmd_signs->add_option("n", n_arg, "half-length")->required();
  auto* cmd_pp = add_sub("enumerate-pp", "all pair partitions of 1..2n");
  cmd_pp->add_option("n", n_arg, "half-length")->required();

  std::string eps_arg;
  auto* cmd_with_sign =
      add_sub("pp-with-sign", "pair partitions with the given sign word");
  cmd_with_sign->add_option("eps", eps_arg, "comma-separated +/-1 list")
      ->required();
  auto* cmd_counterpart =
      add_sub("counterpart", "the unique non-crossing matching of a word");
  cmd_counterpart->add_option("eps", eps_arg, "comma-separated +/-1 list")
      ->required();
  auto* cmd_pset =
      add_sub("pset", "the distinguished matchings of a positive-class word");
  cmd_pset->add_option("eps", eps_arg, "comma-separated +/-1 list")
      ->required();

  std::string theta_arg;
  auto* cmd_crossing = add_sub("crossing", "restricted crossing number");
  cmd_crossing->add_option("theta", theta_arg, "pairs as l-r,l-r,...")
      ->required();
  int k_arg = 0;
  auto* cmd_depth = add_sub("depth", "depth of pair k in a non-crossing matching");
  cmd_depth->add_option("theta", theta_arg, "pairs as l-r,l-r,...")
      ->required();
  cmd_depth->add_option("k", k_arg, "1-based pair index")->required();

  auto* cmd_moment = add_sub("moment", "vacuum expectation of the operator word");
  cmd_moment->add_option("eps", eps_arg, "comma-separated +/-1 list")
      ->required();
  bool symbolic_flag = false;
  std::string gram_path, q_arg;
  auto* opt_symbolic = cmd_moment->add_flag("--symbolic", symbolic_flag,
                                            "keep inner products symbolic");
  cmd_moment->add_option("--gram", gram_path, "gram matrix file")
      ->excludes(opt_symbolic);
  cmd_moment->add_option("--q", q_arg, "substitute q = P/Q");

  auto* cmd_verify = add_sub("verify", "run the full verification harness");
  int verify_n_max = 4;
  int verify_dim = 2;
  std::string q_grid_arg = "-1,-1/2,0,1/2,1";
  cmd_verify->add_option("--n-max", verify_n_max, "half-length ceiling")
      ->check(CLI::Range(1, 5))
      ->capture_default_str();
  cmd_verify->add_option("--q-grid", q_grid_arg, "comma-separated rationals")
      ->capture_default_str();
  cmd_verify->add_option("--dim", verify_dim, "test-space dimension")
      ->check(CLI::Range(2, 3))
      ->capture_default_str();

  std::vector<std::string> argv_copy(args);
  argv_copy.insert(argv_copy.begin(), "qfock");
  std::vector<const char*> argv;
  argv.reserve(argv_copy.size());
  for (const auto& a : argv_copy) argv.push_back(a.c_str());

  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return 2;
  }

  try {
    if (cmd_signs->parsed()) {
      const auto signs = enumerate_positive_signs(n_arg, max_n);
      if (format == Format::json) {
        nlohmann::json body = nlohmann::json::array();
        for (const auto& eps : signs) body.push_back(eps.values());
        out << nlohmann::json{{"signs", body}}.dump(2) << '\n';
      } else {
        for (const auto& eps : signs) out << eps.str() << '\n';
      }
    } else if (cmd_pp->parsed()) {
      detail::emit_partitions(enumerate_pp(n_arg, max_n), format, out);
    } else if (cmd_with_sign->parsed()) {
      const auto eps = detail::parse_sign_sequence(eps_arg);
      detail::word_cap_guard(eps, max_n);
      detail::emit_partitions(enumerate_pp_with_sign(eps), format, out);
    } else if (cmd_counterpart->parsed()) {
      const auto theta =
          ncpp_counterpart(detail::parse_sign_sequence(eps_arg));
      if (format == Format::json)
        out << detail::to_json(theta).dump(2) << '\n';
      else
        out << theta.str() << '\n';
    } else if (cmd_crossing->parsed()) {
      const int c = crossing_number(detail::parse_partition(theta_arg));
      if (format == Format::json)
        out << nlohmann::json{{"crossing", c}}.dump(2) << '\n';
      else
        out << c << '\n';
    } else if (cmd_depth->parsed()) {
      const int d = depth(detail::parse_partition(theta_arg), k_arg);
      if (format == Format::json)
        out << nlohmann::json{{"depth", d}}.dump(2) << '\n';
      else
        out << d << '\n';
    } else if (cmd_pset->parsed()) {
      const auto eps = detail::parse_sign_sequence(eps_arg);
      detail::word_cap_guard(eps, max_n);
      const PSet pset = build_p_set(eps);
      if (format == Format::json) {
        nlohmann::json members = nlohmann::json::array();
        for (const auto& theta : pset.members)
          members.push_back(detail::to_json(theta));
        nlohmann::json fixed = nlohmann::json::array();
        for (const auto& [l, r] : pset.fixed_deep_pairs.pairs())
          fixed.push_back({l, r});
        nlohmann::json support = nlohmann::json::array();
        for (const auto& sigma : pset.variable_block) {
          // all variable matchings share one support
          for (int label : sigma.support()) support.push_back(label);
          break;
        }
        out << nlohmann::json{{"fixed_deep_pairs", fixed},
                              {"variable_support", support},
                              {"members", members}}
                   .dump(2)
            << '\n';
      } else if (format == Format::csv) {
        detail::emit_partitions(pset.members, format, out);
      } else {
        out << "fixed: "
            << (pset.fixed_deep_pairs.empty() ? "-"
                                              : pset.fixed_deep_pairs.str())
            << '\n';
        out << "members (" << pset.members.size() << "):\n";
        for (const auto& theta : pset.members) out << theta.str() << '\n';
      }
    } else if (cmd_moment->parsed()) {
      const auto eps = detail::parse_sign_sequence(eps_arg);
      detail::word_cap_guard(eps, max_n);
      const GramSource gram = gram_path.empty()
                                  ? GramSource::symbolic()
                                  : detail::load_gram_file(gram_path);
      if (!gram.is_symbolic() && gram.label_count() < eps.size())
        throw std::invalid_argument(
            "gram matrix smaller than the word length");
      MultiPoly result = vacuum_expectation_operator(eps, gram);
      if (!q_arg.empty())
        result = substitute_q(result, parse_rational(q_arg));
      detail::emit_poly(result, format, out);
    } else if (cmd_verify->parsed()) {
      const auto q_grid = detail::parse_q_grid(q_grid_arg);
      std::vector<VerifyReport> reports = check_main_theorem(verify_n_max);
      auto append = [&reports](std::vector<VerifyReport> more) {
        reports.insert(reports.end(), std::make_move_iterator(more.begin()),
                       std::make_move_iterator(more.end()));
      };
      append(check_uniqueness(std::min(verify_n_max, 4)));
      append(check_combinatorics(verify_n_max));
      append(check_fock_analysis(q_grid, verify_dim,
                                 std::min(verify_n_max, 3)));
      detail::emit_reports(reports, format, out);
      return all_passed(reports) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace qfock::cli
