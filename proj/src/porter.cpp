#include "lintext/porter.hpp"

namespace lintext {
namespace {

// Working state for one word. `end_` is the index of the last character of
// the current stem, `mark_` the end of the stem before a matched suffix.
class PorterStemmer {
 public:
  explicit PorterStemmer(std::string_view word) : b_(word) {
    end_ = static_cast<int>(b_.size()) - 1;
  }

  std::string run() {
    if (end_ <= 1) return b_;
    step1ab();
    if (end_ > 0) {
      step1c();
      step2();
      step3();
      step4();
      step5();
    }
    return b_.substr(0, static_cast<std::size_t>(end_ + 1));
  }

 private:
  bool cons(int i) const {
    switch (b_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !cons(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b[0..mark_].
  int measure() const {
    int n = 0;
    int i = 0;
    while (true) {
      if (i > mark_) return n;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i > mark_) return n;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      while (true) {
        if (i > mark_) return n;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (int i = 0; i <= mark_; ++i)
      if (!cons(i)) return true;
    return false;
  }

  bool double_cons(int i) const {
    if (i < 1) return false;
    if (b_[i] != b_[i - 1]) return false;
    return cons(i);
  }

  // consonant-vowel-consonant ending at i, where the last c is not w, x or y.
  bool cvc(int i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    const char ch = b_[i];
    return ch != 'w' && ch != 'x' && ch != 'y';
  }

  bool ends(std::string_view s) {
    const int len = static_cast<int>(s.size());
    if (len > end_ + 1) return false;
    if (std::string_view(b_).substr(static_cast<std::size_t>(end_ - len + 1),
                                    s.size()) != s)
      return false;
    mark_ = end_ - len;
    return true;
  }

  void set_to(std::string_view s) {
    b_.replace(static_cast<std::size_t>(mark_ + 1),
               static_cast<std::size_t>(end_ - mark_), s);
    end_ = mark_ + static_cast<int>(s.size());
  }

  void replace_if_measured(std::string_view s) {
    if (measure() > 0) set_to(s);
  }

  void truncate() { b_.resize(static_cast<std::size_t>(end_ + 1)); }

  void step1ab() {
    if (b_[end_] == 's') {
      if (ends("sses")) {
        end_ -= 2;
      } else if (ends("ies")) {
        set_to("i");
      } else if (b_[end_ - 1] != 's') {
        --end_;
      }
    }
    truncate();
    if (ends("eed")) {
      if (measure() > 0) --end_;
    } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
      end_ = mark_;
      truncate();
      if (ends("at")) {
        set_to("ate");
      } else if (ends("bl")) {
        set_to("ble");
      } else if (ends("iz")) {
        set_to("ize");
      } else if (double_cons(end_)) {
        --end_;
        const char ch = b_[end_];
        if (ch == 'l' || ch == 's' || ch == 'z') ++end_;
      } else {
        mark_ = end_;
        if (measure() == 1 && cvc(end_)) {
          mark_ = end_;
          set_to("e");
        }
      }
    }
    truncate();
  }

  void step1c() {
    if (ends("y") && vowel_in_stem()) b_[end_] = 'i';
  }

  // Tries each (suffix, replacement) pair in order; the first matching suffix
  // wins and is replaced when the remaining stem has measure > 0.
  template <std::size_t N>
  bool try_rules(const std::pair<std::string_view, std::string_view> (&rules)[N]) {
    for (const auto& [suffix, repl] : rules) {
      if (ends(suffix)) {
        replace_if_measured(repl);
        truncate();
        return true;
      }
    }
    return false;
  }

  void step2() {
    if (end_ < 1) return;
    static constexpr std::pair<std::string_view, std::string_view> rules[] = {
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
        {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
        {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
        {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
        {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
        {"iviti", "ive"},   {"biliti", "ble"},
    };
    try_rules(rules);
  }

  void step3() {
    static constexpr std::pair<std::string_view, std::string_view> rules[] = {
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    };
    try_rules(rules);
  }

  void step4() {
    if (end_ < 1) return;
    static constexpr std::string_view suffixes[] = {
        "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement",
        "ment", "ent", "ion",  "ou",  "ism", "ate",  "iti",  "ous", "ive",
        "ize",
    };
    // Longest suffix sharing a penultimate letter must be tried first
    // ("ement" before "ment" before "ent").
    for (std::string_view s : suffixes) {
      if (!ends(s)) continue;
      if (s == "ion" && !(mark_ >= 0 && (b_[mark_] == 's' || b_[mark_] == 't')))
        continue;
      if (measure() > 1) {
        end_ = mark_;
        truncate();
      }
      return;
    }
  }

  void step5() {
    mark_ = end_;
    if (b_[end_] == 'e') {
      const int m = measure();
      if (m > 1 || (m == 1 && !cvc(end_ - 1))) --end_;
    }
    if (b_[end_] == 'l' && double_cons(end_) && measure() > 1) --end_;
    truncate();
  }

  std::string b_;
  int end_ = -1;
  int mark_ = 0;
};

}  // namespace

std::string porter_stem(std::string_view word) {
  return PorterStemmer(word).run();
}

}  // namespace lintext
