"""
Hurwitz-Radon numbers and typical-rank lookups
==============================================

For ``m <= n`` and ``p = (m-1)n`` the typical ranks of ``m x n x p`` real
tensors are ``{p}`` when ``m`` exceeds the Hurwitz-Radon number of ``n`` and
``{p, p+1}`` otherwise.
"""

from typical_rank import hurwitz_radon, typical_ranks

# rho(n) only depends on the power of two dividing n
for n in (1, 2, 3, 4, 8, 12, 16, 32, 64, 128):
    print(f"rho({n:>3}) = {hurwitz_radon(n)}")

# the dichotomy for small m <= n
print()
print(" m  n   p   rho(n)  typical ranks")
for n in range(3, 9):
    for m in range(3, n + 1):
        p = (m - 1) * n
        ans = typical_ranks(m, n, p)
        print(f"{m:>2} {n:>2} {p:>3}   {hurwitz_radon(n):>6}  {ans}")

# neighbouring regimes, and a case the table does not cover
for dims in [(2, 3, 3), (2, 3, 5), (3, 4, 10), (3, 3, 20), (4, 5, 7)]:
    ans = typical_ranks(*dims)
    print(f"{dims}: {ans}  [{ans.citation}]")
