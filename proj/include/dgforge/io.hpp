#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dgforge/module.hpp"

namespace dgforge {

/**
 * Text format "dgforge/1". One statement per line, '#' starts a comment.
 *
 *   dgforge/1
 *   kind algebra
 *   field Q                 # or Fp:<p>
 *   basis 1:0 x:1           # name:degree, may repeat
 *   unit 1
 *   mul x * x = 0           # unlisted products are zero, products with the unit are implied
 *   diff x = 2 y - 1/3 z    # unlisted differentials are zero
 *
 *   dgforge/1
 *   kind module
 *   algebra dual_numbers.dga   # path relative to this file, or builtin:NAME
 *   over A                     # or A^op
 *   basis m:0
 *   act m * x = 0
 *   diff m = 0
 *
 * Errors are Errc::invalid_input with "source:line:col: message".
 */

/** The field line of an algebra document; Q when absent. */
FieldSpec peek_field(const std::string& text, const std::string& source);

template <class K> FdDga<K> parse_algebra(const std::string& text, const std::string& source);

struct ModuleHeader {
  std::optional<std::string> algebra;  // as written
  bool opposite = false;               // over A^op
};

ModuleHeader peek_module(const std::string& text, const std::string& source);

/** Parses a module over the given algebra (A or A^op as the header says). */
template <class K> DgModule<K> parse_module(const std::string& text, const std::string& source, DgaPtr<K> algebra);

template <class K> std::string emit_algebra(const FdDga<K>& a);
template <class K> std::string emit_module(const DgModule<K>& m, const std::string& algebra_ref, bool opposite = false);

/** FNV-1a 64 of the bytes, as 16 hex digits. */
std::string fnv1a64(const std::string& bytes);

std::string read_file(const std::string& path);

}  // namespace dgforge
