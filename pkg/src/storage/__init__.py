# Map files and structured reports
