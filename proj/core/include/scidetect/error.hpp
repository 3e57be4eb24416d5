#pragma once

#include <stdexcept>
#include <string>

namespace scidetect {

// Error codes for everything the library can reject. The category split
// (usage/data/runtime) maps onto the CLI exit codes.
enum class errc {
  // corpus
  missing_field,
  bad_label,
  empty_text,
  empty_title,
  too_few_records,
  duplicate_id,
  bad_json,
  // generation client
  auth_failure,
  rate_limited,
  timeout,
  empty_completion,
  http_error,
  // lm
  empty_corpus,
  bad_order,
  empty_document,
  one_class_only,
  // detector
  too_few_rows,
  all_columns_pruned,
  no_convergence,
  singular_information,
  bad_likelihoods,
  missing_feature,
  // eval
  length_mismatch,
  empty_input,
  // io / misc
  io_failure,
  bad_format,
};

const char* errc_name(errc code);

// True for errors caused by malformed or degenerate input data, as opposed
// to environment/runtime failures (I/O, network, non-convergence).
bool is_data_error(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace scidetect
