#pragma once

#if defined(WIGMAJ_VENDORED_JSON)
#include <json.hpp>
#else
#include <nlohmann/json.hpp>
#endif
