# GUI package

