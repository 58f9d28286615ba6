#include "alphabet.hpp"

namespace godelstr {

namespace {

constexpr std::array<char, kAlphabetSize> kAlphabet = {
    'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i', 'j', 'k', 'l', 'm', 'n',
    'o', 'p', 'q', 'r', 's', 't', 'u', 'v', 'w', 'x', 'y', 'z', '0', '1',
    '2', '3', '4', '5', '6', '7', '8', '9', '"', '\\', '=', '!', '(', ')',
    '~', '&', '|', '-', '>', 'A', 'E', ':', '+', '*', '<'};

struct NumberTable {
  std::array<int, 256> num{};
  NumberTable() {
    num.fill(0);
    for (int i = 0; i < kAlphabetSize; ++i) {
      num[static_cast<unsigned char>(kAlphabet[i])] = i + 1;
    }
  }
};

const NumberTable& table() {
  static const NumberTable t;
  return t;
}

}  // namespace

const std::array<char, kAlphabetSize>& alphabet() { return kAlphabet; }

int char_number(char c) { return table().num[static_cast<unsigned char>(c)]; }

bool is_alpha_char(char c) { return char_number(c) != 0; }

char char_at(int number) { return kAlphabet[static_cast<std::size_t>(number - 1)]; }

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_valid_str(const std::string& s) {
  for (char c : s) {
    if (!is_alpha_char(c)) return false;
  }
  return true;
}

void require_valid_str(const std::string& s, const char* what) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!is_alpha_char(s[i])) {
      throw Error(ErrorCode::BadInput,
                  std::string(what) + " contains a byte outside the 53-character alphabet", i);
    }
  }
}

std::string encode_chars(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '\\') {
      out += "\\0";
    } else if (c == '"') {
      out += "\\1";
    } else {
      out += c;
    }
  }
  return out;
}

std::string decode_chars(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '"') {
      throw Error(ErrorCode::MalformedEscape, "raw '\"' in encoded sequence", i);
    }
    if (c != '\\') {
      out += c;
      continue;
    }
    if (i + 1 >= s.size()) {
      throw Error(ErrorCode::MalformedEscape, "trailing '\\' in encoded sequence", i);
    }
    char d = s[i + 1];
    if (d == '0') {
      out += '\\';
    } else if (d == '1') {
      out += '"';
    } else {
      throw Error(ErrorCode::MalformedEscape,
                  std::string("undefined escape '\\") + d + "'", i);
    }
    ++i;
  }
  return out;
}

bool is_variable_name(const std::string& s) {
  if (s.empty() || !is_lower(s[0])) return false;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!is_digit(s[i])) return false;
  }
  return true;
}

}  // namespace godelstr
