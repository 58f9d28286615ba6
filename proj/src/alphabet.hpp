#pragma once

#include <array>
#include <string>

#include "errors.hpp"

namespace godelstr {

// The 53 characters of the object language, in numbering order:
// a..z (1..26), 0..9 (27..36), " (37), \ (38), = (39), ! (40), ( (41),
// ) (42), ~ (43), & (44), | (45), - (46), > (47), A (48), E (49), : (50),
// + (51), * (52), < (53).  The byte '!' stands for the inequality glyph.
inline constexpr int kAlphabetSize = 53;

const std::array<char, kAlphabetSize>& alphabet();

// 1..53 for members of the alphabet, 0 for anything else.
int char_number(char c);
bool is_alpha_char(char c);
// number must be in 1..53.
char char_at(int number);

bool is_lower(char c);
bool is_digit(char c);

// True iff every byte of s belongs to the alphabet.
bool is_valid_str(const std::string& s);
void require_valid_str(const std::string& s, const char* what);

// Character escaping: '\' -> "\0", '"' -> "\1"; other characters unchanged.
std::string encode_chars(const std::string& s);

// Inverse of encode_chars.  Throws Error(MalformedEscape) on a '\' followed
// by anything other than '0'/'1', a trailing '\', or a raw '"'.
std::string decode_chars(const std::string& s);

// Variable grammar: one lower-case letter followed by zero or more digits.
bool is_variable_name(const std::string& s);

}  // namespace godelstr
