#pragma once

#include <string>
#include <vector>

namespace halcece {

// Lowercases, strips punctuation, splits on whitespace. Every n-gram number
// downstream depends on this being the single tokenization.
std::vector<std::string> tokenize(const std::string& text);

// Sentence split on . ! ? and newlines, each sentence tokenized; empty
// sentences dropped.
std::vector<std::vector<std::string>> sentence_tokens(const std::string& text);

// N-gram F1 against one reference, or averaged over several.
double rouge_n(const std::string& candidate, const std::string& reference,
               int n);
double rouge_n(const std::string& candidate,
               const std::vector<std::string>& references, int n);

// Longest-common-subsequence F1, flat texts.
double rouge_l(const std::string& candidate, const std::string& reference);
double rouge_l(const std::string& candidate,
               const std::vector<std::string>& references);

// Summary-level LCS: union-LCS per reference sentence across all candidate
// sentences, clipped by token counts; F1 averaged over references.
double rouge_lsum(const std::string& candidate,
                  const std::vector<std::string>& references);

// 4-gram precision with brevity penalty, counts clipped against the maximum
// reference count, no smoothing. Zero when any order has no match.
double bleu(const std::string& candidate,
            const std::vector<std::string>& references);

// Mean over n = 1..4 of min(n-gram precision, n-gram recall), averaged over
// references. Orders where neither side has an n-gram are skipped.
double google_bleu(const std::string& candidate,
                   const std::vector<std::string>& references);

}  // namespace halcece
