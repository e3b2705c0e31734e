#pragma once

#include <string>
#include <variant>
#include <vector>

#include "entcert/certificate.hpp"
#include "entcert/hierarchy.hpp"
#include "entcert/subspace.hpp"

namespace entcert::io {

/// Parsed subspace file in its declared arithmetic mode.
using AnySubspace = std::variant<Subspace<Complexd>, Subspace<RationalComplex>>;
using AnyMixedState = std::variant<MixedState<Complexd>, MixedState<RationalComplex>>;

AnySubspace parse_subspace_file(const std::string& text);
AnyMixedState parse_state_file(const std::string& text);

std::string serialize_subspace_file(const Subspace<Complexd>& s);
std::string serialize_subspace_file(const Subspace<RationalComplex>& s);
std::string serialize_state_file(const MixedState<Complexd>& m);
std::string serialize_state_file(const MixedState<RationalComplex>& m);

/// Provenance recorded next to the certificate payload.
struct CertificateProvenance {
  std::string input_name;
  std::string input_hash;  // fnv1a64 of the raw input bytes, hex
  double elapsed_ms = 0.0;
};

struct CertificateFile {
  Certificate certificate;
  CertificateProvenance provenance;
};

/// Serialization is canonical (sorted keys, fixed indent), so
/// parse -> serialize reproduces the input byte for byte.
std::string serialize_certificate(const CertificateFile& file);
CertificateFile parse_certificate(const std::string& text);

std::string fnv1a64_hex(const std::string& bytes);

/// Reads a file, or stdin when the path is "-".
std::string read_input(const std::string& path);
/// Writes to a file, or stdout when the path is "-".
void write_output(const std::string& path, const std::string& text);

}  // namespace entcert::io
