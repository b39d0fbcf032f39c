package io;

import java.util.HashMap;
import java.util.Map;

/* Keeps recently read files in memory. */
public class FileCache {
    private final Map<String, String> entries = new HashMap<>();

    public String get(String path) {
        String cached = entries.get(path);
        if (cached == null) {
            return "";
        }
        return cached;
    }

    public void put(String path, String text) {
        entries.put(path, text);
    }
}
