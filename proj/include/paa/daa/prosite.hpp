#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "paa/daa/nfa.hpp"
#include "paa/error.hpp"

namespace paa {

inline const std::string kAminoAcids = "ACDEFGHIKLMNPQRSTVWY";

namespace detail {

struct PrositeElement {
  std::string members;
  std::size_t min_repeat = 1;
  std::size_t max_repeat = 1;
};

class PrositeParser {
 public:
  PrositeParser(const std::string& text, const std::string& alphabet) : s_(text), alphabet_(alphabet) {}

  std::vector<PrositeElement> parse() {
    std::vector<PrositeElement> out;
    if (s_.empty()) throw ParseError("empty Prosite pattern", 0);
    if (s_[0] == '<') throw UnsupportedFeature("Prosite N-terminal anchor '<' is not supported");
    std::string body = s_;
    if (!body.empty() && body.back() == '.') body.pop_back();
    if (!body.empty() && body.back() == '>') throw UnsupportedFeature("Prosite C-terminal anchor '>' is not supported");
    end_ = body.size();
    while (true) {
      out.push_back(element());
      if (i_ == end_) break;
      if (s_[i_] != '-') throw ParseError(std::string("expected '-' but found '") + s_[i_] + "'", i_);
      ++i_;
    }
    return out;
  }

 private:
  PrositeElement element() {
    if (i_ >= end_) throw ParseError("unexpected end of pattern", i_);
    PrositeElement e;
    const char ch = s_[i_];
    if (ch == 'x' || ch == 'X') {
      e.members = alphabet_;
      ++i_;
    } else if (ch == '[') {
      const std::size_t open = i_++;
      while (i_ < end_ && s_[i_] != ']') {
        if (s_[i_] == '>' || s_[i_] == '<') throw UnsupportedFeature("anchors inside character classes are not supported");
        e.members += residue(i_);
        ++i_;
      }
      if (i_ >= end_) throw ParseError("unterminated character class", open);
      if (e.members.empty()) throw ParseError("empty character class", open);
      ++i_;
    } else if (ch == '{') {
      throw UnsupportedFeature("negated character classes '{...}' are not supported");
    } else if (ch == '<' || ch == '>') {
      throw UnsupportedFeature("Prosite anchors are not supported");
    } else {
      e.members = std::string(1, residue(i_));
      ++i_;
    }
    if (i_ < end_ && s_[i_] == '(') {
      const std::size_t open = i_++;
      e.min_repeat = number();
      e.max_repeat = e.min_repeat;
      if (i_ < end_ && s_[i_] == ',') {
        ++i_;
        e.max_repeat = number();
      }
      if (i_ >= end_ || s_[i_] != ')') throw ParseError("expected ')'", i_);
      ++i_;
      if (e.max_repeat < e.min_repeat) throw ParseError("repeat range is decreasing", open);
    }
    return e;
  }

  char residue(std::size_t at) const {
    const char ch = s_[at];
    if (alphabet_.find(ch) == std::string::npos) {
      throw ParseError(std::string("unexpected character '") + ch + "'", at);
    }
    return ch;
  }

  std::size_t number() {
    const std::size_t begin = i_;
    std::size_t v = 0;
    while (i_ < end_ && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = v * 10 + static_cast<std::size_t>(s_[i_] - '0');
      if (v > 10'000) throw ParseError("repeat count too large", begin);
      ++i_;
    }
    if (i_ == begin) throw ParseError("expected a number", i_);
    return v;
  }

  const std::string& s_;
  const std::string& alphabet_;
  std::size_t i_ = 0;
  std::size_t end_ = 0;
};

}  // namespace detail

/// Expands a Prosite pattern (literals, [classes], x, (i) and (i,j) repeats)
/// into the finite set of generalized strings it denotes.
inline std::vector<GeneralizedString> expand_prosite(const std::string& pattern,
                                                     const std::string& alphabet = kAminoAcids,
                                                     std::size_t max_expansions = 1'000'000) {
  const auto elements = detail::PrositeParser(pattern, alphabet).parse();
  std::vector<GeneralizedString> result{GeneralizedString{}};
  for (const auto& e : elements) {
    std::vector<GeneralizedString> next;
    for (const auto& prefix : result) {
      for (std::size_t r = e.min_repeat; r <= e.max_repeat; ++r) {
        GeneralizedString g = prefix;
        g.insert(g.end(), r, e.members);
        next.push_back(std::move(g));
        if (next.size() > max_expansions) throw ResourceError("Prosite pattern expands to too many generalized strings");
      }
    }
    result = std::move(next);
  }
  std::vector<GeneralizedString> nonempty;
  for (auto& g : result) {
    if (!g.empty()) nonempty.push_back(std::move(g));
  }
  if (nonempty.empty()) throw ArgumentError("Prosite pattern only matches the empty string");
  return nonempty;
}

/// Renders a generalized string in Prosite-like notation, e.g. "A-x-[GA]".
inline std::string format_generalized(const GeneralizedString& g, const std::string& alphabet = kAminoAcids) {
  std::string out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) out += '-';
    if (g[i].size() == alphabet.size()) {
      out += 'x';
    } else if (g[i].size() == 1) {
      out += g[i];
    } else {
      out += '[' + g[i] + ']';
    }
  }
  return out;
}

}  // namespace paa
