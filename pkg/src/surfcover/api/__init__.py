"""HTTP surface for the surfcover toolkit."""
