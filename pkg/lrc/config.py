# lrc/config.py

"""
Package-wide defaults, kept in one place so they can be tweaked in one spot.
Functions accept these as keyword arguments; the CLI exposes the useful ones as flags.
"""

DEFAULTS = {
    # prime search
    "split_search_ceiling":       2 ** 31,   # next_split_primes gives up past this
    "exhaustive_root_scan_limit": 2 ** 20,   # below: scan F_p, above: gcd(x^p - x, m)

    # field validation
    "irreducibility_primes":      50,        # mod-p certificates tried in nf_new

    # brute-force analysis guard on M^(r(s+1))
    "analysis_max_messages":      2 ** 24,

    # codeword wire format
    "codeword_magic":             b"NFLC",
    "codeword_version":           1,

    # reproducibility / parallelism
    "default_seed":               0,
    "default_threads":            1,
}
