#include "tlsf/lexer.hpp"

#include <array>
#include <utility>

#include "tlsf/ast.hpp"

namespace tlsf {

namespace {

struct Spelling {
  std::string_view text;
  Tok kind;
};

// Longest spellings first so that a linear scan implements longest match.
constexpr std::array kSymbols = {
    Spelling{"(+)", Tok::Cup},     Spelling{"(*)", Tok::Cap},    Spelling{"(\\)", Tok::SetMinus},
    Spelling{"(-)", Tok::SetMinus}, Spelling{"<->", Tok::Equiv},
    Spelling{"&&", Tok::And},      Spelling{"||", Tok::Or},      Spelling{"->", Tok::Implies},
    Spelling{"<-", Tok::In},       Spelling{"==", Tok::Eq},      Spelling{"!=", Tok::Neq},
    Spelling{"/=", Tok::Neq},      Spelling{"<=", Tok::Leq},     Spelling{">=", Tok::Geq},
    Spelling{"..", Tok::DotDot},
    Spelling{"{", Tok::LBrace},    Spelling{"}", Tok::RBrace},   Spelling{"(", Tok::LParen},
    Spelling{")", Tok::RParen},    Spelling{"[", Tok::LBracket}, Spelling{"]", Tok::RBracket},
    Spelling{",", Tok::Comma},     Spelling{";", Tok::Semicolon}, Spelling{":", Tok::Colon},
    Spelling{"=", Tok::Assign},    Spelling{"~", Tok::Tilde},    Spelling{"|", Tok::Pipe},
    Spelling{"+", Tok::Plus},      Spelling{"-", Tok::Minus},    Spelling{"*", Tok::Star},
    Spelling{"/", Tok::Slash},     Spelling{"%", Tok::Percent},  Spelling{"<", Tok::Lt},
    Spelling{">", Tok::Gt},        Spelling{"!", Tok::Not},
};

constexpr std::array kWords = {
    Spelling{"INFO", Tok::KwInfo},
    Spelling{"TITLE", Tok::KwTitle},
    Spelling{"DESCRIPTION", Tok::KwDescription},
    Spelling{"SEMANTICS", Tok::KwSemantics},
    Spelling{"TARGET", Tok::KwTarget},
    Spelling{"TAGS", Tok::KwTags},
    Spelling{"GLOBAL", Tok::KwGlobal},
    Spelling{"PARAMETERS", Tok::KwParameters},
    Spelling{"DEFINITIONS", Tok::KwDefinitions},
    Spelling{"MAIN", Tok::KwMain},
    Spelling{"INPUTS", Tok::KwInputs},
    Spelling{"OUTPUTS", Tok::KwOutputs},
    Spelling{"ASSUMPTIONS", Tok::KwAssumptions},
    Spelling{"INVARIANTS", Tok::KwInvariants},
    Spelling{"GUARANTEES", Tok::KwGuarantees},
    Spelling{"true", Tok::True},
    Spelling{"false", Tok::False},
    Spelling{"otherwise", Tok::Otherwise},
    Spelling{"X", Tok::Next},
    Spelling{"F", Tok::Finally},
    Spelling{"G", Tok::Globally},
    Spelling{"U", Tok::Until},
    Spelling{"R", Tok::Release},
    Spelling{"W", Tok::WeakUntil},
    Spelling{"SUM", Tok::Sum},
    Spelling{"PROD", Tok::Prod},
    Spelling{"SIZE", Tok::Size},
    Spelling{"MIN", Tok::Min},
    Spelling{"MAX", Tok::Max},
    Spelling{"SIZEOF", Tok::SizeOf},
    Spelling{"MUL", Tok::Star},
    Spelling{"DIV", Tok::Slash},
    Spelling{"MOD", Tok::Percent},
    Spelling{"PLUS", Tok::Plus},
    Spelling{"MINUS", Tok::Minus},
    Spelling{"CAP", Tok::Cap},
    Spelling{"CUP", Tok::Cup},
    Spelling{"SETMINUS", Tok::SetMinus},
    Spelling{"EQ", Tok::Eq},
    Spelling{"NEQ", Tok::Neq},
    Spelling{"LE", Tok::Lt},
    Spelling{"LEQ", Tok::Leq},
    Spelling{"GE", Tok::Gt},
    Spelling{"GEG", Tok::Geq},
    Spelling{"GEQ", Tok::Geq},
    Spelling{"IN", Tok::In},
    Spelling{"ELEM", Tok::In},
    Spelling{"NOT", Tok::Not},
    Spelling{"AND", Tok::And},
    Spelling{"FORALL", Tok::Forall},
    Spelling{"OR", Tok::Or},
    Spelling{"EXISTS", Tok::Exists},
    Spelling{"IMPLIES", Tok::Implies},
    Spelling{"EQUIV", Tok::Equiv},
};

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '@';
}
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c) || c == '\''; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      if (at_end()) break;
      out.push_back(next_token());
    }
    out.push_back(Token{Tok::End, "", here()});
    return out;
  }

 private:
  std::string_view src_;
  std::size_t i_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t col_ = 1;

  bool at_end() const { return i_ >= src_.size(); }
  char peek(std::size_t k = 0) const { return i_ + k < src_.size() ? src_[i_ + k] : '\0'; }
  SourcePos here() const { return {line_, col_}; }

  void advance() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_trivia() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        skip_block_comment();
      } else {
        return;
      }
    }
  }

  void skip_block_comment() {
    SourcePos start = here();
    int depth = 0;
    do {
      if (at_end()) throw Error(ErrorKind::Lex, start, "unterminated block comment");
      if (peek() == '/' && peek(1) == '*') {
        ++depth;
        advance();
        advance();
      } else if (peek() == '*' && peek(1) == '/') {
        --depth;
        advance();
        advance();
      } else {
        advance();
      }
    } while (depth > 0);
  }

  Token next_token() {
    SourcePos pos = here();
    char c = peek();
    if (is_digit(c)) {
      std::string digits;
      while (is_digit(peek())) {
        digits.push_back(peek());
        advance();
      }
      return Token{Tok::Natural, std::move(digits), pos};
    }
    if (is_ident_start(c)) {
      std::string word;
      while (is_ident_char(peek())) {
        word.push_back(peek());
        advance();
      }
      if (word == "_") return Token{Tok::Wildcard, std::move(word), pos};
      for (const auto& w : kWords) {
        if (w.text == word) return Token{w.kind, std::move(word), pos};
      }
      return Token{Tok::Identifier, std::move(word), pos};
    }
    if (c == '"') return string_literal(pos);
    for (const auto& s : kSymbols) {
      if (src_.substr(i_, s.text.size()) == s.text) {
        for (std::size_t k = 0; k < s.text.size(); ++k) advance();
        return Token{s.kind, std::string(s.text), pos};
      }
    }
    std::string shown(1, c);
    throw Error(ErrorKind::Lex, pos, "illegal character '" + shown + "'");
  }

  Token string_literal(SourcePos pos) {
    advance();  // opening quote
    std::string body;
    while (true) {
      if (at_end()) throw Error(ErrorKind::Lex, pos, "unterminated string literal");
      char c = peek();
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        SourcePos esc = here();
        advance();
        if (at_end()) throw Error(ErrorKind::Lex, pos, "unterminated string literal");
        char e = peek();
        if (e != '"' && e != '\\') {
          throw Error(ErrorKind::Lex, esc, std::string("unknown escape sequence '\\") + e + "'");
        }
        body.push_back(e);
        advance();
        continue;
      }
      body.push_back(c);
      advance();
    }
    return Token{Tok::String, std::move(body), pos};
  }
};

}  // namespace

const char* describe(Tok kind) {
  switch (kind) {
    case Tok::End: return "end of input";
    case Tok::Identifier: return "identifier";
    case Tok::Natural: return "number";
    case Tok::String: return "string literal";
    case Tok::Wildcard: return "'_'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Semicolon: return "';'";
    case Tok::Colon: return "':'";
    case Tok::DotDot: return "'..'";
    case Tok::Assign: return "'='";
    case Tok::Tilde: return "'~'";
    case Tok::Pipe: return "'|'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Percent: return "'%'";
    case Tok::Cup: return "'(+)'";
    case Tok::Cap: return "'(*)'";
    case Tok::SetMinus: return "'(\\)'";
    case Tok::Eq: return "'=='";
    case Tok::Neq: return "'!='";
    case Tok::Lt: return "'<'";
    case Tok::Leq: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Geq: return "'>='";
    case Tok::In: return "'IN'";
    case Tok::Not: return "'!'";
    case Tok::Next: return "'X'";
    case Tok::Finally: return "'F'";
    case Tok::Globally: return "'G'";
    case Tok::And: return "'&&'";
    case Tok::Or: return "'||'";
    case Tok::Implies: return "'->'";
    case Tok::Equiv: return "'<->'";
    case Tok::WeakUntil: return "'W'";
    case Tok::Until: return "'U'";
    case Tok::Release: return "'R'";
    case Tok::Sum: return "'SUM'";
    case Tok::Prod: return "'PROD'";
    case Tok::Forall: return "'FORALL'";
    case Tok::Exists: return "'EXISTS'";
    case Tok::Size: return "'SIZE'";
    case Tok::Min: return "'MIN'";
    case Tok::Max: return "'MAX'";
    case Tok::SizeOf: return "'SIZEOF'";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::Otherwise: return "'otherwise'";
    case Tok::KwInfo: return "'INFO'";
    case Tok::KwTitle: return "'TITLE'";
    case Tok::KwDescription: return "'DESCRIPTION'";
    case Tok::KwSemantics: return "'SEMANTICS'";
    case Tok::KwTarget: return "'TARGET'";
    case Tok::KwTags: return "'TAGS'";
    case Tok::KwGlobal: return "'GLOBAL'";
    case Tok::KwParameters: return "'PARAMETERS'";
    case Tok::KwDefinitions: return "'DEFINITIONS'";
    case Tok::KwMain: return "'MAIN'";
    case Tok::KwInputs: return "'INPUTS'";
    case Tok::KwOutputs: return "'OUTPUTS'";
    case Tok::KwAssumptions: return "'ASSUMPTIONS'";
    case Tok::KwInvariants: return "'INVARIANTS'";
    case Tok::KwGuarantees: return "'GUARANTEES'";
  }
  return "token";
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace tlsf
