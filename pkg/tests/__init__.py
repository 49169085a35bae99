"""
Test suite for UML2XML.
"""
