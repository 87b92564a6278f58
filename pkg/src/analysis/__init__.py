# Covers, complexity, independence and reporting
