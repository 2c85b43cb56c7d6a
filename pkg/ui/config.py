# ui/config.py

"""
Bundled starting points for the explorer.
A preset names its field either by `min_poly` (b_0 .. b_{d-1}) or by a
`construct` block handed to construct_field; `primes` is a list or "auto:L".
"""
PRESETS = {
    "example_quartic": {
        "label":    "x^4 - 4x^2 + 2 (worked example)",
        "min_poly": [2, 0, -4, 0],
        "default": {
            "s":      3,
            "M":      2,
            "primes": "17,31,47",
        },
    },
    "eisenstein": {
        "label":    "x^2 + x + 1",
        "min_poly": [1, 1],
        "default": {
            "s":      1,
            "M":      3,
            "primes": "7,13",
        },
    },
    "constructed_cubic": {
        "label":     "cubic split at 5, 7, 11 (constructed)",
        "construct": {"degree": 3, "primes": [5, 7, 11]},
        "default": {
            "s":      0,
            "M":      2,
            "primes": "auto:8",
        },
    },
}

# limits for the interactive widgets
UI_LIMITS = {
    "max_split_primes":   200,
    "max_auto_primes":    64,
    "max_analysis_size":  2 ** 16,
}
