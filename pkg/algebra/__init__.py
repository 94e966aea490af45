"""
Ample groupoid homology engine
Exact integer linear algebra, finite groupoids, groupoid modules, homology,
étale correspondences and inverse semigroups
"""
