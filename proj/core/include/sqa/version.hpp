#ifndef SQA_VERSION_HPP
#define SQA_VERSION_HPP

namespace sqa {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
