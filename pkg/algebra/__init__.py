"""
Exact algebra at the degenerate star: the Milnor algebra of the 3-jet, the
ELK bilinear form, Johnson-scheme intersection matrices and the hypergeometric
identities behind their eigenvalues.
"""
