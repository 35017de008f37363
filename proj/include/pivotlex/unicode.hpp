#pragma once

#include <string>
#include <string_view>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "pivotlex/error.hpp"

namespace pivotlex::unicode {

inline bool is_valid_utf8(std::string_view text) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) return false;
  }
  return true;
}

// Decodes into Unicode scalar values. Input must be valid UTF-8.
inline std::u32string code_points(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) throw Error("invalid UTF-8 sequence");
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

// Trims, collapses internal whitespace runs to one ASCII space and,
// optionally, applies default case folding followed by NFC composition.
inline std::string clean_text(std::string_view raw, bool fold_and_compose) {
  if (!is_valid_utf8(raw)) throw Error("invalid UTF-8 sequence");
  const auto cps = code_points(raw);

  icu::UnicodeString collapsed;
  bool pending_space = false;
  for (char32_t c : cps) {
    if (u_isUWhiteSpace(static_cast<UChar32>(c))) {
      pending_space = !collapsed.isEmpty();
      continue;
    }
    if (pending_space) collapsed.append(static_cast<UChar32>(' '));
    pending_space = false;
    collapsed.append(static_cast<UChar32>(c));
  }

  if (fold_and_compose) {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
    // Folding can leave a string that is not NFC and vice versa; iterate to
    // the fixed point so the transformation is idempotent.
    for (int round = 0; round < 4; ++round) {
      icu::UnicodeString next = collapsed;
      next.foldCase(U_FOLD_CASE_DEFAULT);
      next = nfc->normalize(next, status);
      if (U_FAILURE(status)) throw Error("ICU normalization failed");
      if (next == collapsed) break;
      collapsed = next;
    }
  }

  std::string out;
  collapsed.toUTF8String(out);
  return out;
}

}  // namespace pivotlex::unicode
