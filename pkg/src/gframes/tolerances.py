"""Central numerical tolerances.

Dense double-precision eigen/SVD routines at the sizes this package
targets (dimensions up to a few dozen) are accurate to about 1e-13, so
1e-8 certification thresholds leave a wide margin while still rejecting
anything that is wrong rather than merely rounded.
"""

TAU_HERM = 1e-8     # Frobenius defect ||M - M*|| accepted as self-adjoint
TAU_NORM = 1e-8     # slack on operator-norm preconditions (||A|| <= 1, <= 1/3)
TAU_PSD = 1e-8      # most negative eigenvalue tolerated in a PSD input
TAU_RANK = 1e-10    # eigenvalue threshold separating rank loss from roundoff
TAU_CLASS = 1e-8    # relative gap |B - A| <= TAU_CLASS*B for tightness tags
TAU_DUAL = 1e-8     # Frobenius defect of sum(D_i* L_i) - I in duality checks
TAU_INV = 1e-8      # default series tolerance for certified inverses
TAU_COMM = 1e-8     # relative commutation defect ||S C* - C S||
TAU_EIG = 1e-8      # relative proportionality residual in weight extraction
TAU_RECON = 1e-9    # relative reconstruction residual for decompositions

MAX_SERIES_TERMS = 100_000  # hard cap on truncated operator series
