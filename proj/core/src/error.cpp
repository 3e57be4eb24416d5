#include "scidetect/error.hpp"

namespace scidetect {

const char* errc_name(errc code) {
  switch (code) {
    case errc::missing_field: return "MissingField";
    case errc::bad_label: return "BadLabel";
    case errc::empty_text: return "EmptyText";
    case errc::empty_title: return "EmptyTitle";
    case errc::too_few_records: return "TooFewRecords";
    case errc::duplicate_id: return "DuplicateId";
    case errc::bad_json: return "BadJson";
    case errc::auth_failure: return "AuthFailure";
    case errc::rate_limited: return "RateLimited";
    case errc::timeout: return "Timeout";
    case errc::empty_completion: return "EmptyCompletion";
    case errc::http_error: return "HttpError";
    case errc::empty_corpus: return "EmptyCorpus";
    case errc::bad_order: return "BadOrder";
    case errc::empty_document: return "EmptyDocument";
    case errc::one_class_only: return "OneClassOnly";
    case errc::too_few_rows: return "TooFewRows";
    case errc::all_columns_pruned: return "AllColumnsPruned";
    case errc::no_convergence: return "NoConvergence";
    case errc::singular_information: return "SingularInformation";
    case errc::bad_likelihoods: return "BadLikelihoods";
    case errc::missing_feature: return "MissingFeature";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::empty_input: return "Empty";
    case errc::io_failure: return "IoFailure";
    case errc::bad_format: return "BadFormat";
  }
  return "Unknown";
}

bool is_data_error(errc code) {
  switch (code) {
    case errc::missing_field:
    case errc::bad_label:
    case errc::empty_text:
    case errc::empty_title:
    case errc::too_few_records:
    case errc::duplicate_id:
    case errc::bad_json:
    case errc::empty_corpus:
    case errc::bad_order:
    case errc::empty_document:
    case errc::one_class_only:
    case errc::too_few_rows:
    case errc::all_columns_pruned:
    case errc::bad_likelihoods:
    case errc::missing_feature:
    case errc::length_mismatch:
    case errc::empty_input:
    case errc::bad_format:
      return true;
    default:
      return false;
  }
}

}  // namespace scidetect
