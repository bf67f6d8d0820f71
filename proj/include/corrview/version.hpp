#pragma once

namespace corrview {
inline constexpr const char* kCodeVersion = "0.1.0";
}
