#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "errors.hpp"

namespace ordp {

struct SourceLocation {
  std::size_t line = 1;
  std::size_t column = 1;

  std::string str() const { return std::to_string(line) + ":" + std::to_string(column); }
};

/// Errors in a program text, tagged with where they were found.
class LocatedError : public Error {
 public:
  LocatedError(std::string kind, SourceLocation at, const std::string& message)
      : Error(std::move(kind), at.str() + ": " + message), at_(at), message_(message) {}

  const SourceLocation& where() const noexcept { return at_; }
  const std::string& message() const noexcept { return message_; }

 private:
  SourceLocation at_;
  std::string message_;
};

class ParseError : public LocatedError {
 public:
  ParseError(SourceLocation at, const std::string& m) : LocatedError("ParseError", at, m) {}
};

class NameError : public LocatedError {
 public:
  NameError(SourceLocation at, const std::string& m) : LocatedError("NameError", at, m) {}
};

class TypeError : public LocatedError {
 public:
  TypeError(SourceLocation at, const std::string& m) : LocatedError("TypeError", at, m) {}
};

struct Sexp {
  enum class Kind { Atom, String, List };

  Kind kind = Kind::Atom;
  std::string text;  // Atom, String
  std::vector<Sexp> items;
  SourceLocation at;

  bool is_atom() const { return kind == Kind::Atom; }
  bool is_list() const { return kind == Kind::List; }
  bool is_keyword() const { return is_atom() && !text.empty() && text[0] == ':'; }
  bool is_integer() const {
    if (!is_atom() || text.empty()) return false;
    std::size_t i = text[0] == '-' ? 1 : 0;
    if (i == text.size()) return false;
    for (; i < text.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    }
    return true;
  }
  /// Head symbol of a list, or "".
  const std::string& head() const {
    static const std::string none;
    return is_list() && !items.empty() && items[0].is_atom() ? items[0].text : none;
  }

  bool operator==(const Sexp& o) const {
    return kind == o.kind && text == o.text && items == o.items;
  }

  std::string str() const {
    switch (kind) {
      case Kind::Atom: return text;
      case Kind::String: {
        std::string s = "\"";
        for (char c : text) {
          if (c == '"' || c == '\\') s += '\\';
          s += c;
        }
        return s + "\"";
      }
      case Kind::List: {
        std::string s = "(";
        for (std::size_t i = 0; i < items.size(); ++i) s += (i ? " " : "") + items[i].str();
        return s + ")";
      }
    }
    return {};
  }

  static Sexp atom(std::string t) { return Sexp{Kind::Atom, std::move(t), {}, {}}; }
  static Sexp string(std::string t) { return Sexp{Kind::String, std::move(t), {}, {}}; }
  static Sexp list(std::vector<Sexp> xs) { return Sexp{Kind::List, {}, std::move(xs), {}}; }
};

namespace detail {

class Reader {
 public:
  explicit Reader(const std::string& text) : s_(text) {}

  std::vector<Sexp> all() {
    std::vector<Sexp> out;
    for (skip(); i_ < s_.size(); skip()) out.push_back(read());
    return out;
  }

 private:
  SourceLocation here() const { return at_; }

  void advance() {
    if (s_[i_] == '\n') {
      ++at_.line;
      at_.column = 1;
    } else {
      ++at_.column;
    }
    ++i_;
  }

  void skip() {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (c == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Sexp read() {
    SourceLocation start = here();
    char c = s_[i_];
    if (c == ')') throw ParseError(start, "unexpected ')'");
    if (c == '(') {
      advance();
      end_ = here();
      Sexp node{Sexp::Kind::List, {}, {}, start};
      for (;;) {
        skip();
        if (i_ >= s_.size()) throw ParseError(end_, "unexpected end of input, '(' at " + start.str() + " is not closed");
        if (s_[i_] == ')') {
          advance();
          end_ = here();
          return node;
        }
        node.items.push_back(read());
      }
    }
    if (c == '"') {
      advance();
      Sexp node{Sexp::Kind::String, {}, {}, start};
      for (;;) {
        if (i_ >= s_.size()) throw ParseError(here(), "unterminated string");
        char d = s_[i_];
        advance();
        if (d == '"') {
          end_ = here();
          return node;
        }
        if (d == '\\') {
          if (i_ >= s_.size()) throw ParseError(here(), "unterminated string");
          d = s_[i_];
          advance();
        }
        node.text += d;
      }
    }
    Sexp node{Sexp::Kind::Atom, {}, {}, start};
    while (i_ < s_.size()) {
      char d = s_[i_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';' || d == '"') break;
      node.text += d;
      advance();
    }
    end_ = here();
    return node;
  }

  const std::string& s_;
  std::size_t i_ = 0;
  SourceLocation at_;
  SourceLocation end_;  // just past the last token
};

}  // namespace detail

inline std::vector<Sexp> read_all(const std::string& text) { return detail::Reader(text).all(); }

inline Sexp read_one(const std::string& text) {
  auto xs = read_all(text);
  if (xs.size() != 1) throw ParseError({}, "expected exactly one form, found " + std::to_string(xs.size()));
  return xs[0];
}

}  // namespace ordp
