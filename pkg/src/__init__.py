# __init__.py files for package structure
