#include "halcece/text_metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>

namespace halcece {

namespace {

using Tokens = std::vector<std::string>;
using Counts = std::map<std::string, int>;

// N-grams as joined strings; '\x1f' cannot appear in tokenized text.
Counts ngram_counts(const Tokens& tokens, int n) {
  Counts counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (int k = 1; k < n; ++k) key += '\x1f' + tokens[i + k];
    ++counts[key];
  }
  return counts;
}

int total(const Counts& counts) {
  int sum = 0;
  for (const auto& [key, c] : counts) sum += c;
  return sum;
}

int overlap(const Counts& a, const Counts& b) {
  int sum = 0;
  for (const auto& [key, c] : a) {
    auto it = b.find(key);
    if (it != b.end()) sum += std::min(c, it->second);
  }
  return sum;
}

double f1(double hits, double candidate_total, double reference_total) {
  if (hits == 0.0 || candidate_total == 0.0 || reference_total == 0.0)
    return 0.0;
  const double p = hits / candidate_total;
  const double r = hits / reference_total;
  return 2.0 * p * r / (p + r);
}

std::vector<std::vector<int>> lcs_table(const Tokens& a, const Tokens& b) {
  std::vector<std::vector<int>> dp(a.size() + 1,
                                   std::vector<int>(b.size() + 1, 0));
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      dp[i][j] = a[i - 1] == b[j - 1]
                     ? dp[i - 1][j - 1] + 1
                     : std::max(dp[i - 1][j], dp[i][j - 1]);
  return dp;
}

// Indices into `ref` that one LCS against `cand` covers.
std::set<std::size_t> lcs_indices(const Tokens& ref, const Tokens& cand) {
  const auto dp = lcs_table(ref, cand);
  std::set<std::size_t> covered;
  std::size_t i = ref.size(), j = cand.size();
  while (i > 0 && j > 0) {
    if (ref[i - 1] == cand[j - 1] && dp[i][j] == dp[i - 1][j - 1] + 1) {
      covered.insert(i - 1);
      --i;
      --j;
    } else if (dp[i - 1][j] >= dp[i][j - 1]) {
      --i;
    } else {
      --j;
    }
  }
  return covered;
}

double mean_over_references(const std::string& candidate,
                            const std::vector<std::string>& references,
                            double (*score)(const std::string&,
                                            const std::string&)) {
  if (references.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : references) sum += score(candidate, r);
  return sum / references.size();
}

double lsum_single(const std::string& candidate, const std::string& reference) {
  const auto cand_sentences = sentence_tokens(candidate);
  const auto ref_sentences = sentence_tokens(reference);
  Counts cand_left, ref_left;
  int n = 0, m = 0;
  for (const auto& s : cand_sentences)
    for (const auto& t : s) ++cand_left[t], ++n;
  for (const auto& s : ref_sentences)
    for (const auto& t : s) ++ref_left[t], ++m;

  int hits = 0;
  for (const auto& ref : ref_sentences) {
    std::set<std::size_t> covered;
    for (const auto& cand : cand_sentences) {
      const auto one = lcs_indices(ref, cand);
      covered.insert(one.begin(), one.end());
    }
    for (std::size_t idx : covered) {
      const std::string& tok = ref[idx];
      if (cand_left[tok] > 0 && ref_left[tok] > 0) {
        ++hits;
        --cand_left[tok];
        --ref_left[tok];
      }
    }
  }
  return f1(hits, n, m);
}

double rouge_l_single(const std::string& candidate,
                      const std::string& reference) {
  const Tokens c = tokenize(candidate);
  const Tokens r = tokenize(reference);
  if (c.empty() || r.empty()) return 0.0;
  const int lcs = lcs_table(r, c)[r.size()][c.size()];
  return f1(lcs, c.size(), r.size());
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
  Tokens tokens;
  std::string current;
  for (unsigned char ch : text) {
    if (std::isalnum(ch)) {
      current += static_cast<char>(std::tolower(ch));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::vector<std::string>> sentence_tokens(const std::string& text) {
  std::vector<Tokens> sentences;
  std::string current;
  auto flush = [&] {
    Tokens tokens = tokenize(current);
    if (!tokens.empty()) sentences.push_back(std::move(tokens));
    current.clear();
  };
  for (char ch : text) {
    if (ch == '.' || ch == '!' || ch == '?' || ch == '\n')
      flush();
    else
      current += ch;
  }
  flush();
  return sentences;
}

double rouge_n(const std::string& candidate, const std::string& reference,
               int n) {
  const Counts c = ngram_counts(tokenize(candidate), n);
  const Counts r = ngram_counts(tokenize(reference), n);
  return f1(overlap(c, r), total(c), total(r));
}

double rouge_n(const std::string& candidate,
               const std::vector<std::string>& references, int n) {
  if (references.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : references) sum += rouge_n(candidate, r, n);
  return sum / references.size();
}

double rouge_l(const std::string& candidate, const std::string& reference) {
  return rouge_l_single(candidate, reference);
}

double rouge_l(const std::string& candidate,
               const std::vector<std::string>& references) {
  return mean_over_references(candidate, references, rouge_l_single);
}

double rouge_lsum(const std::string& candidate,
                  const std::vector<std::string>& references) {
  return mean_over_references(candidate, references, lsum_single);
}

double bleu(const std::string& candidate,
            const std::vector<std::string>& references) {
  const Tokens c = tokenize(candidate);
  if (c.empty() || references.empty()) return 0.0;
  std::vector<Tokens> refs;
  for (const auto& r : references) refs.push_back(tokenize(r));

  double log_sum = 0.0;
  for (int n = 1; n <= 4; ++n) {
    const Counts cand_counts = ngram_counts(c, n);
    Counts clipped_max;
    for (const auto& r : refs)
      for (const auto& [key, count] : ngram_counts(r, n))
        clipped_max[key] = std::max(clipped_max[key], count);
    const int matched = overlap(cand_counts, clipped_max);
    const int possible = total(cand_counts);
    if (matched == 0 || possible == 0) return 0.0;
    log_sum += std::log(static_cast<double>(matched) / possible);
  }

  // Effective reference length: closest to the candidate, ties to shorter.
  std::size_t best_len = refs.front().size();
  for (const auto& r : refs) {
    const auto dist = [&](std::size_t len) {
      return len > c.size() ? len - c.size() : c.size() - len;
    };
    if (dist(r.size()) < dist(best_len) ||
        (dist(r.size()) == dist(best_len) && r.size() < best_len))
      best_len = r.size();
  }
  const double brevity =
      c.size() >= best_len
          ? 1.0
          : std::exp(1.0 - static_cast<double>(best_len) / c.size());
  return brevity * std::exp(log_sum / 4.0);
}

double google_bleu(const std::string& candidate,
                   const std::vector<std::string>& references) {
  const Tokens c = tokenize(candidate);
  if (c.empty() || references.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& reference : references) {
    const Tokens r = tokenize(reference);
    double acc = 0.0;
    int orders = 0;
    for (int n = 1; n <= 4; ++n) {
      const Counts cand_counts = ngram_counts(c, n);
      const Counts ref_counts = ngram_counts(r, n);
      const int cand_total = total(cand_counts);
      const int ref_total = total(ref_counts);
      if (cand_total == 0 && ref_total == 0) continue;
      ++orders;
      if (cand_total == 0 || ref_total == 0) continue;  // min is 0
      const int matched = overlap(cand_counts, ref_counts);
      acc += std::min(static_cast<double>(matched) / cand_total,
                      static_cast<double>(matched) / ref_total);
    }
    if (orders > 0) sum += acc / orders;
  }
  return sum / references.size();
}

}  // namespace halcece
