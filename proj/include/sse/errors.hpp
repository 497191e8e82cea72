#pragma once

#include <stdexcept>
#include <string>

namespace sse {

// Base for every domain error raised by the library. The CLI maps these onto
// exit statuses; the Python module maps them onto sse.Error subclasses.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyTerm : public Error {
 public:
  explicit EmptyTerm(const std::string& raw)
      : Error("term has no words after normalization: '" + raw + "'") {}
};

class DuplicateDocumentId : public Error {
 public:
  explicit DuplicateDocumentId(const std::string& id)
      : Error("duplicate document id: " + id) {}
};

class UnreadableSource : public Error {
 public:
  using Error::Error;
};

class UnknownDocument : public Error {
 public:
  explicit UnknownDocument(const std::string& id)
      : Error("unknown document: " + id) {}
};

class BagSemanticsUnsupported : public Error {
 public:
  BagSemanticsUnsupported()
      : Error("positional queries need an index built with phrase semantics") {}
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DuplicateTerm : public Error {
 public:
  explicit DuplicateTerm(const std::string& term)
      : Error("duplicate term: " + term) {}
};

class CorruptIndex : public Error {
 public:
  using Error::Error;
};

class CorpusIndexMismatch : public Error {
 public:
  using Error::Error;
};

class NotASubterm : public Error {
 public:
  using Error::Error;
};

}  // namespace sse
