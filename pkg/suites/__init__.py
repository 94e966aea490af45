"""
Verification suites: each one draws instances, checks an identity exhaustively
and reports failures with a replayable witness.
"""
